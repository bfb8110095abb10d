#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "oracles.hpp"
#include "pcode/outer_fec.hpp"

using namespace pcode;

namespace {

Bits bits_of(const std::string& s) {
  Bits out;
  for (char c : s) out.push_back(static_cast<std::uint8_t>(c - '0'));
  return out;
}

std::string str(const Bits& b) {
  std::string s;
  for (auto v : b) s.push_back(static_cast<char>('0' + v));
  return s;
}

// Tabulated state machine for (7,5): state = (previous bit, bit before that).
Bits table_encode(const Bits& info) {
  static const int out1[4][2] = {{0, 1}, {1, 0}, {1, 0}, {0, 1}};  // u ^ s1 ^ s2
  static const int out2[4][2] = {{0, 1}, {0, 1}, {1, 0}, {1, 0}};  // u ^ s2
  Bits in = info;
  in.push_back(0);
  in.push_back(0);
  int s1 = 0, s2 = 0;
  Bits out;
  for (auto u : in) {
    const int st = s1 + 2 * s2;
    out.push_back(static_cast<std::uint8_t>(out1[st][u]));
    out.push_back(static_cast<std::uint8_t>(out2[st][u]));
    s2 = s1;
    s1 = u;
  }
  return out;
}

}  // namespace

TEST_CASE("conv_encode examples") {
  CHECK(str(conv_encode(bits_of("0000"))) == "000000000000");
  CHECK(str(conv_encode(bits_of("1011"))) == "111000010111");
  CHECK(conv_encode(bits_of("1011")) == table_encode(bits_of("1011")));
  CHECK(ConvCode::coded_length(30) == 64);
}

TEST_CASE("conv_encode matches the tabulated state machine and is linear") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 70;
    Bits a(n), b(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<std::uint8_t>(rng() & 1U);
      b[i] = static_cast<std::uint8_t>(rng() & 1U);
      x[i] = a[i] ^ b[i];
    }
    const Bits ea = conv_encode(a);
    const Bits eb = conv_encode(b);
    REQUIRE(ea.size() == 2 * (n + 2));
    REQUIRE(ea == table_encode(a));
    Bits sum(ea.size());
    for (std::size_t i = 0; i < ea.size(); ++i) sum[i] = ea[i] ^ eb[i];
    REQUIRE(conv_encode(x) == sum);
    REQUIRE(conv_decode(std::span<const std::uint8_t>(ea)) == a);
  }
}

TEST_CASE("single flips are corrected") {
  for (std::uint32_t v = 0; v < 16; ++v) {
    const Bits info = oracle::word(v, 4);
    const Bits cw = conv_encode(info);
    for (std::size_t i = 0; i < cw.size(); ++i) {
      Bits rx = cw;
      rx[i] ^= 1U;
      CHECK(conv_decode(std::span<const std::uint8_t>(rx)) == info);
    }
  }
}

TEST_CASE("all erased decodes to zeros") {
  const Symbols rx(ConvCode::coded_length(12), Symbol::erased);
  CHECK(conv_decode(rx) == Bits(12, 0));
  CHECK_THROWS(conv_decode(Symbols{}));
  CHECK_THROWS(conv_decode(Symbols(7, Symbol::zero)));
}

TEST_CASE("conv Viterbi equals exhaustive search for N <= 10") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 10);
    Bits info(n);
    for (auto& b : info) b = static_cast<std::uint8_t>(rng() & 1U);
    const Bits cw = conv_encode(info);
    const double pe = static_cast<double>(rng() % 100) / 100.0;
    const double pf = static_cast<double>(rng() % 30) / 100.0;
    Symbols rx;
    for (auto b : cw) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < pe) {
        rx.push_back(Symbol::erased);
      } else if (u < pe + pf * (1 - pe)) {
        rx.push_back(static_cast<Symbol>(b ^ 1U));
      } else {
        rx.push_back(static_cast<Symbol>(b));
      }
    }
    REQUIRE(conv_decode(rx) == oracle::conv_ml(rx, n));
  }
}

TEST_CASE("interleaver") {
  const std::vector<int> seq{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(interleave(seq, 2) == std::vector<int>{0, 4, 1, 5, 2, 6, 3, 7});
  CHECK(interleave(seq, 1) == seq);
  CHECK(deinterleave(interleave(seq, 4), 4) == seq);
  CHECK_THROWS_AS(interleave(seq, 3), std::domain_error);
  CHECK_THROWS_AS(deinterleave(seq, 0), std::domain_error);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t rows = 1 + rng() % 12;
    std::vector<std::uint64_t> x(rows * (1 + rng() % 20));
    for (auto& v : x) v = rng();
    const auto y = interleave(x, rows);
    REQUIRE(deinterleave(y, rows) == x);
    auto sx = x, sy = y;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    REQUIRE(sx == sy);
  }
}
