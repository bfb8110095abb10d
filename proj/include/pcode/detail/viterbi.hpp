#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <algorithm>
#include <vector>

namespace pcode::detail {

/// Hard-metric Viterbi over a binary-input trellis that returns, among all
/// minimum-metric input sequences, the lexicographically smallest one.
///
/// Survivors are stored as back-pointers. On a metric tie the two candidate
/// prefixes are compared by walking both back-pointer chains to the point
/// where they merge; the earliest differing input bit decides. Because each
/// (time, state) keeps exactly one survivor, merged chains share their whole
/// history, so this gives the exact lexicographic order.
///
/// `Trellis` provides:
///   int num_states() const;
///   int next(int state, int bit) const;
///   int metric(std::size_t step, int state, int bit) const;  // >= 0
template <typename Trellis>
std::vector<std::uint8_t> lexmin_viterbi(const Trellis& trellis, std::size_t steps, int start_state,
                                          std::optional<int> end_state) {
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  const int n = trellis.num_states();
  std::vector<long> metric(n, kInf);
  std::vector<long> next_metric(n);
  metric[start_state] = 0;
  // prev_state[t][c], bit[t][c]: survivor into state c after step t.
  std::vector<int> prev_state_flat(steps * n, -1);
  std::vector<std::uint8_t> prev_bit_flat(steps * n, 0);
  auto prev_state = [&](std::size_t t) { return prev_state_flat.data() + t * n; };
  auto prev_bit = [&](std::size_t t) { return prev_bit_flat.data() + t * n; };

  // Compare the survivor prefixes ending in states a and b after `t` steps.
  // Returns <0 if a's prefix is lexicographically smaller, >0 if larger.
  auto compare_prefix = [&](std::size_t t, int a, int b) {
    int verdict = 0;
    for (std::size_t k = t; k > 0 && a != b; --k) {
      const int ba = prev_bit(k - 1)[a];
      const int bb = prev_bit(k - 1)[b];
      if (ba != bb) verdict = ba < bb ? -1 : 1;  // keep overwriting: earliest wins
      a = prev_state(k - 1)[a];
      b = prev_state(k - 1)[b];
    }
    return verdict;
  };

  for (std::size_t t = 0; t < steps; ++t) {
    std::fill(next_metric.begin(), next_metric.end(), kInf);
    int* ps = prev_state(t);
    std::uint8_t* pb = prev_bit(t);
    for (int a = 0; a < n; ++a) {
      if (metric[a] >= kInf) continue;
      for (int b = 0; b < 2; ++b) {
        const int c = trellis.next(a, b);
        const long m = metric[a] + trellis.metric(t, a, b);
        bool take = m < next_metric[c];
        if (!take && m == next_metric[c]) {
          const int cmp = compare_prefix(t, a, ps[c]);
          take = cmp < 0 || (cmp == 0 && b < pb[c]);
        }
        if (take) {
          next_metric[c] = m;
          ps[c] = a;
          pb[c] = static_cast<std::uint8_t>(b);
        }
      }
    }
    metric.swap(next_metric);
  }

  int best = -1;
  if (end_state) {
    best = *end_state;
  } else {
    for (int c = 0; c < n; ++c) {
      if (metric[c] >= kInf) continue;
      if (best < 0 || metric[c] < metric[best] || (metric[c] == metric[best] && compare_prefix(steps, c, best) < 0)) {
        best = c;
      }
    }
  }
  std::vector<std::uint8_t> bits(steps);
  for (std::size_t k = steps; k > 0; --k) {
    bits[k - 1] = prev_bit(k - 1)[best];
    best = prev_state(k - 1)[best];
  }
  return bits;
}

}  // namespace pcode::detail
