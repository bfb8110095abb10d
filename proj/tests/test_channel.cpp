#include <doctest.h>

#include <cmath>

#include "pcode/channel.hpp"

using namespace pcode;

TEST_CASE("state draws follow the binomial law") {
  Rng rng(42);
  const auto states = draw_states(StateProcess(4), 1000000, rng);
  std::vector<long> hist(5, 0);
  for (int s : states) {
    REQUIRE(s >= 0);
    REQUIRE(s <= 4);
    ++hist[static_cast<std::size_t>(s)];
  }
  CHECK(std::abs(static_cast<double>(hist[2]) / 1e6 - 0.375) < 0.002);
  const double want[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  for (int s = 0; s <= 4; ++s) {
    const double sigma = std::sqrt(want[s] * (1 - want[s]) / 1e6);
    CHECK(std::abs(static_cast<double>(hist[static_cast<std::size_t>(s)]) / 1e6 - want[s]) < 4 * sigma);
  }
  CHECK(draw_states(StateProcess(4), 0, rng).empty());
  CHECK_THROWS(StateProcess(0));
}

TEST_CASE("streams are reproducible and distinct") {
  Rng a(7), b(7);
  CHECK(draw_states(StateProcess(6), 100, a) == draw_states(StateProcess(6), 100, b));
  auto s1 = make_stream(1, 30, 5, StreamRole::channel);
  auto s2 = make_stream(1, 30, 5, StreamRole::channel);
  auto s3 = make_stream(1, 30, 5, StreamRole::states);
  auto s4 = make_stream(1, 30, 6, StreamRole::channel);
  const auto v1 = s1.next();
  CHECK(v1 == s2.next());
  CHECK(v1 != s3.next());
  CHECK(v1 != s4.next());
  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(u.below(5) < 5);
  }
}

TEST_CASE("channel edge cases") {
  const Frame f = Frame::from_string("1011");
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(transmit(f, ChannelModel(ChannelKind::bec, 0.0), rng) == ReceivedFrame::clean(f));
    const auto all = transmit(f, ChannelModel(ChannelKind::bec, 1.0), rng);
    CHECK(all.erasures() == 4);
    CHECK(all.to_string() == "eeee");
    CHECK(transmit(Frame::from_string("0000"), ChannelModel(ChannelKind::z, 0.7), rng).to_string() == "0000");
    CHECK(transmit(f, ChannelModel(ChannelKind::bsc, 1.0), rng).to_string() == "0100");
    CHECK(transmit(f, ChannelModel(ChannelKind::z, 1.0), rng).to_string() == "0000");
  }
  CHECK_THROWS(ChannelModel(ChannelKind::bec, 1.5));
  CHECK_THROWS(ChannelModel(ChannelKind::bsc, -0.1));
  CHECK(parse_channel_kind("bsc") == ChannelKind::bsc);
  CHECK(to_string(ChannelKind::z) == "z");
  CHECK_THROWS(parse_channel_kind("awgn"));
}

TEST_CASE("per-bit impairment rates") {
  const long frames = 62500;  // 10^6 packets at F = 16
  const Frame ones{0xFFFF, 16};
  const Frame zeros{0, 16};
  struct Case {
    ChannelKind kind;
    double p;
  };
  for (Case c : {Case{ChannelKind::bec, 0.3}, Case{ChannelKind::bsc, 0.1}, Case{ChannelKind::z, 0.2}}) {
    Rng rng(99);
    long hits = 0;
    long zero_flips = 0;
    for (long i = 0; i < frames; ++i) {
      const auto r = transmit(ones, ChannelModel(c.kind, c.p), rng);
      hits += c.kind == ChannelKind::bec ? r.erasures() : 16 - r.ones();
      if (c.kind == ChannelKind::bec) REQUIRE((r.bits & r.erased) == 0);
      zero_flips += transmit(zeros, ChannelModel(c.kind, c.p), rng).ones();
    }
    const double n = 1e6;
    const double sigma = std::sqrt(c.p * (1 - c.p) / n);
    CHECK(std::abs(static_cast<double>(hits) / n - c.p) < 3 * sigma);
    if (c.kind == ChannelKind::bsc) {
      CHECK(std::abs(static_cast<double>(zero_flips) / n - c.p) < 3 * sigma);
    } else {
      CHECK(zero_flips == 0);
    }
  }
}

TEST_CASE("equal seeds give coupled patterns across p") {
  const Frame f{0xFFFF, 16};
  for (int trial = 0; trial < 200; ++trial) {
    Rng lo(trial), hi(trial);
    const auto a = transmit(f, ChannelModel(ChannelKind::bec, 0.1), lo);
    const auto b = transmit(f, ChannelModel(ChannelKind::bec, 0.3), hi);
    CHECK((a.erased & ~b.erased) == 0);
  }
}
