#include "pcode/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pcode {

namespace {

constexpr int kMaxBinomialN = 128;

// Pascal's triangle up to row 128; every entry fits in 128 bits.
const std::vector<std::vector<BigCount>>& pascal() {
  static const auto table = [] {
    std::vector<std::vector<BigCount>> rows(kMaxBinomialN + 1);
    for (int n = 0; n <= kMaxBinomialN; ++n) {
      rows[n].assign(n + 1, 1);
      for (int k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
    }
    return rows;
  }();
  return table;
}

BigCount gcd128(BigCount a, BigCount b) {
  while (b != 0) {
    const BigCount t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::string to_string(BigCount value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Frame Frame::from_string(std::string_view word) {
  if (word.empty() || word.size() > static_cast<std::size_t>(kMaxFrameLength)) {
    throw std::invalid_argument("Frame: bad word length in '" + std::string(word) + "'");
  }
  Frame f;
  f.length = static_cast<int>(word.size());
  for (char c : word) {
    if (c != '0' && c != '1') throw std::invalid_argument("Frame: non-binary word '" + std::string(word) + "'");
    f.bits = (f.bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return f;
}

std::string Frame::to_string() const {
  std::string out(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i) out[i] = packet(i) ? '1' : '0';
  return out;
}

std::string ReceivedFrame::to_string() const {
  std::string out(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i) {
    const std::uint64_t bit = 1ULL << (length - 1 - i);
    out[i] = (erased & bit) ? 'e' : ((bits & bit) ? '1' : '0');
  }
  return out;
}

int hamming_distance(const Frame& a, const Frame& b) {
  if (a.length != b.length) throw std::domain_error("hamming_distance: frame length mismatch");
  return std::popcount(a.bits ^ b.bits);
}

FrameParams::FrameParams(int frame_length) : frame_length_(frame_length) {
  if (frame_length < 1 || frame_length > kMaxFrameLength) {
    throw std::domain_error("FrameParams: frame length must be in [1, " + std::to_string(kMaxFrameLength) + "]");
  }
}

BigCount binomial(int n, int k) {
  if (n < 0 || n > kMaxBinomialN || k < 0 || k > n) {
    throw std::domain_error("binomial: need 0 <= k <= n <= 128, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return pascal()[n][k];
}

std::uint64_t binomial_u64(int n, int k) {
  const BigCount v = binomial(n, k);
  if (v > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial_u64: value exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> state_distribution(const FrameParams& params) {
  const int f = params.frame_length();
  std::vector<double> out(f + 1);
  const double scale = std::ldexp(1.0, -f);
  for (int s = 0; s <= f; ++s) out[s] = static_cast<double>(binomial(f, s)) * scale;
  return out;
}

std::vector<Rational> state_distribution_exact(const FrameParams& params) {
  const int f = params.frame_length();
  if (f > 62) throw std::overflow_error("state_distribution_exact: F too large for 64-bit rationals");
  std::vector<Rational> out;
  out.reserve(f + 1);
  for (int s = 0; s <= f; ++s) {
    out.emplace_back(static_cast<std::int64_t>(binomial_u64(f, s)), std::int64_t{1} << f);
  }
  return out;
}

BigCount lcm_binomials(const FrameParams& params) {
  const int f = params.frame_length();
  BigCount acc = 1;
  for (int s = 0; s <= f; ++s) {
    const BigCount c = binomial(f, s);
    const BigCount step = c / gcd128(acc, c);
    if (step != 0 && acc > std::numeric_limits<BigCount>::max() / step) {
      throw std::overflow_error("lcm_binomials: result exceeds 128 bits");
    }
    acc *= step;
  }
  return acc;
}

Frame unrank_combination(int frame_length, int weight, std::uint64_t rank) {
  const FrameParams params(frame_length);
  if (weight < 0 || weight > frame_length) throw std::domain_error("unrank_combination: weight out of range");
  const std::uint64_t total = binomial_u64(frame_length, weight);
  if (rank < 1 || rank > total) {
    throw std::domain_error("unrank_combination: rank " + std::to_string(rank) + " outside [1, " +
                            std::to_string(total) + "]");
  }
  Frame f{0, params.frame_length()};
  std::uint64_t r = rank;
  int ones_left = weight;
  for (int remaining = frame_length; remaining > 0; --remaining) {
    const std::uint64_t with_zero = ones_left <= remaining - 1 ? binomial_u64(remaining - 1, ones_left) : 0;
    f.bits <<= 1;
    if (r > with_zero) {
      f.bits |= 1;
      r -= with_zero;
      --ones_left;
    }
  }
  return f;
}

std::uint64_t rank_combination(const Frame& frame) {
  const FrameParams params(frame.length);
  std::uint64_t rank = 1;
  int ones_left = frame.weight();
  for (int i = 0; i < params.frame_length(); ++i) {
    const int remaining = frame.length - i;
    if (frame.packet(i)) {
      if (ones_left <= remaining - 1) rank += binomial_u64(remaining - 1, ones_left);
      --ones_left;
    }
  }
  return rank;
}

double log2_multinomial(std::span<const int> counts) {
  if (counts.empty()) throw std::invalid_argument("log2_multinomial: empty counts");
  long total = 0;
  double log_e = 0.0;
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("log2_multinomial: negative count");
    total += c;
    log_e -= std::lgamma(static_cast<double>(c) + 1.0);
  }
  log_e += std::lgamma(static_cast<double>(total) + 1.0);
  return log_e / std::log(2.0);
}

}  // namespace pcode
