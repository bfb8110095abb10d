#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcode/frame.hpp"
#include "pcode/rational.hpp"

namespace pcode {

/// Exact unsigned integer wide enough for C(128, 64).
using BigCount = unsigned __int128;

std::string to_string(BigCount value);

/// Frame length F (packets per scheduling frame); states run 0..F.
class FrameParams {
 public:
  explicit FrameParams(int frame_length);
  int frame_length() const { return frame_length_; }
  int num_states() const { return frame_length_ + 1; }

 private:
  int frame_length_;
};

/// Exact C(n, k) for 0 <= k <= n <= 128. Throws std::domain_error otherwise.
BigCount binomial(int n, int k);

/// Same as binomial() but narrowed to 64 bits; throws std::overflow_error
/// when the value does not fit.
std::uint64_t binomial_u64(int n, int k);

/// P_S(s) = C(F,s) / 2^F for s = 0..F, the primary state distribution.
std::vector<double> state_distribution(const FrameParams& params);
std::vector<Rational> state_distribution_exact(const FrameParams& params);

/// lcm(C(F,0), ..., C(F,F)).
BigCount lcm_binomials(const FrameParams& params);

/// The rank-th (1-based) weight-s frame when all weight-s frames of length F
/// are sorted as ascending binary integers.
Frame unrank_combination(int frame_length, int weight, std::uint64_t rank);

/// Inverse of unrank_combination: 1-based rank of `frame` among frames of
/// the same length and weight.
std::uint64_t rank_combination(const Frame& frame);

/// log2((sum counts)! / prod counts!) in bits.
double log2_multinomial(std::span<const int> counts);

}  // namespace pcode
