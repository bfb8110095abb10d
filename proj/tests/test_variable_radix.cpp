#include <doctest.h>

#include <random>
#include <vector>

#include "pcode/channel.hpp"
#include "pcode/combinatorics.hpp"
#include "pcode/variable_radix.hpp"

using namespace pcode;

namespace {

std::vector<std::uint8_t> to_bits(std::uint64_t value, int m) {
  std::vector<std::uint8_t> out;
  for (int b = m - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((value >> b) & 1U));
  return out;
}

std::vector<std::string> words(const std::vector<Frame>& frames) {
  std::vector<std::string> out;
  for (const auto& f : frames) out.push_back(f.to_string());
  return out;
}

std::vector<Frame> frames_of(std::initializer_list<const char*> ws) {
  std::vector<Frame> out;
  for (const char* w : ws) out.push_back(Frame::from_string(w));
  return out;
}

}  // namespace

TEST_CASE("split_bins examples") {
  const auto a = split_bins(0, 1023, 6);
  REQUIRE(a.size() == 6);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> want{{0, 170},   {171, 341}, {342, 512},
                                                                   {513, 683}, {684, 853}, {854, 1023}};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a[i].lo == want[i].first);
    CHECK(a[i].hi == want[i].second);
  }
  const auto b = split_bins(684, 853, 4);
  CHECK(b[0] == Interval{684, 726, false});
  CHECK(b[3] == Interval{812, 853, false});
  const auto c = split_bins(777, 783, 4);
  CHECK(c[0] == Interval{777, 778, false});
  CHECK(c[2] == Interval{781, 782, false});
  CHECK(c[3] == Interval{783, 783, false});
  const auto d = split_bins(0, 1, 4);
  CHECK(d[0].size() == 1);
  CHECK(d[1].size() == 1);
  CHECK(d[2].empty);
  CHECK(d[3].empty);
  CHECK_THROWS_AS(split_bins(0, 5, 0), std::domain_error);
}

TEST_CASE("split_bins partitions the interval") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t lo = rng() % 1000;
    const std::uint64_t hi = lo + rng() % 300;
    const std::uint64_t k = 1 + rng() % 40;
    const auto bins = split_bins(lo, hi, k);
    REQUIRE(bins.size() == k);
    std::uint64_t next = lo;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
      total += bins[i].size();
      if (bins[i].empty) continue;
      CHECK(bins[i].lo == next);
      next = bins[i].hi + 1;
      if (i > 0 && !bins[i - 1].empty) CHECK(bins[i - 1].size() >= bins[i].size());
    }
    CHECK(total == hi - lo + 1);
  }
}

TEST_CASE("worked example M=777") {
  const auto msg = to_bits(777, 10);
  const std::vector<int> states{2, 3, 0, 2, 1, 3, 2, 2};
  const auto frames = vr_encode(msg, 10, 4, states);
  REQUIRE(frames.size() >= 5);
  const auto w = words(frames);
  CHECK(std::vector<std::string>(w.begin(), w.begin() + 5) ==
        std::vector<std::string>{"1010", "1101", "0000", "0101", "0001"});
  // After five frames the interval is [777, 778]; the sixth frame (s=3) settles it.
  CHECK(w == std::vector<std::string>{"1010", "1101", "0000", "0101", "0001", "0111"});
  const std::vector<int> used(states.begin(), states.begin() + static_cast<long>(frames.size()));
  CHECK(vr_decode(frames, 10, used) == msg);
}

TEST_CASE("single bit message") {
  const std::vector<int> states{1};
  const auto frames = vr_encode(std::vector<std::uint8_t>{0}, 1, 4, states);
  CHECK(words(frames) == std::vector<std::string>{"0001"});
  CHECK(words(vr_encode(std::vector<std::uint8_t>{1}, 1, 4, states)) == std::vector<std::string>{"0010"});
}

TEST_CASE("empty message and zero-capacity states") {
  CHECK(vr_encode({}, 4, 4, std::vector<int>{}).empty());
  CHECK(vr_decode({}, 4, std::vector<int>{}).empty());

  const std::vector<int> dead{0, 4, 0, 4, 4};
  try {
    vr_encode(to_bits(9, 4), 4, 4, dead);
    FAIL("expected InsufficientFrames");
  } catch (const InsufficientFrames& e) {
    CHECK(e.frames_used() == 5);
    CHECK(e.symbols_done() == 0);
    CHECK(e.remaining_values() == 16);
  }
  CHECK_THROWS_AS(vr_encode(to_bits(9, 4), 3, 4, dead), std::domain_error);
}

TEST_CASE("decoder integrity errors") {
  // Weight disagrees with the declared state.
  CHECK_THROWS_AS(vr_decode(frames_of({"0011"}), 1, std::vector<int>{1}), IntegrityError);
  // [0, 1] split four ways leaves the last two bins empty.
  CHECK_THROWS_AS(vr_decode(frames_of({"0100"}), 1, std::vector<int>{1}), IntegrityError);
  // Symbol still open when the frames run out.
  CHECK_THROWS_AS(vr_decode(frames_of({"1010"}), 10, std::vector<int>{2}), IntegrityError);
  CHECK_THROWS_AS(vr_decode(frames_of({"1010"}), 10, std::vector<int>{2, 3}), IntegrityError);
}

TEST_CASE("roundtrip on random messages and state sequences") {
  for (bool pack : {false, true}) {
    VariableRadixOptions opts;
    opts.pack_leftover = pack;
    std::mt19937_64 rng(pack ? 101 : 100);
    for (int trial = 0; trial < 100000; ++trial) {
      const int f = 2 + trial % 4;
      const int m = 1 + static_cast<int>(rng() % 16);
      const int symbols = 1 + static_cast<int>(rng() % 4);
      std::vector<std::uint8_t> msg;
      for (int i = 0; i < m * symbols; ++i) msg.push_back(static_cast<std::uint8_t>(rng() & 1U));
      Rng srng(rng());
      const auto states = draw_states(StateProcess(f), 400, srng);
      const auto frames = vr_encode(msg, m, f, states, opts);
      for (std::size_t i = 0; i < frames.size(); ++i) REQUIRE(frames[i].weight() == states[i]);
      const std::vector<int> used(states.begin(), states.begin() + static_cast<long>(frames.size()));
      const auto back = vr_decode(frames, m, used, opts);
      REQUIRE(back == msg);
    }
  }
}

TEST_CASE("packing never costs frames") {
  std::mt19937_64 rng(9);
  long plain = 0;
  long packed = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<std::uint8_t> msg;
    for (int i = 0; i < 8 * 6; ++i) msg.push_back(static_cast<std::uint8_t>(rng() & 1U));
    Rng srng(rng());
    const auto states = draw_states(StateProcess(4), 400, srng);
    plain += static_cast<long>(vr_encode(msg, 8, 4, states).size());
    packed += static_cast<long>(vr_encode(msg, 8, 4, states, {true}).size());
  }
  CHECK(packed <= plain);
}

TEST_CASE("one corrupted frame breaks decoding") {
  std::mt19937_64 rng(21);
  int trials = 0;
  int failures = 0;
  while (trials < 5000) {
    std::vector<std::uint8_t> msg;
    for (int i = 0; i < 10 * 4; ++i) msg.push_back(static_cast<std::uint8_t>(rng() & 1U));
    Rng srng(rng());
    const auto states = draw_states(StateProcess(4), 400, srng);
    auto frames = vr_encode(msg, 10, 4, states);
    const std::vector<int> used(states.begin(), states.begin() + static_cast<long>(frames.size()));
    // Replace one informative frame by another frame of the same weight.
    std::vector<std::size_t> informative;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (used[i] != 0 && used[i] != 4) informative.push_back(i);
    }
    const std::size_t i = informative[rng() % informative.size()];
    const auto count = binomial_u64(4, used[i]);
    const auto r = rank_combination(frames[i]);
    frames[i] = unrank_combination(4, used[i], 1 + (r - 1 + 1 + rng() % (count - 1)) % count);
    ++trials;
    try {
      if (vr_decode(frames, 10, used) != msg) ++failures;
    } catch (const IntegrityError&) {
      ++failures;
    }
  }
  CHECK(failures >= trials * 99 / 100);
}
