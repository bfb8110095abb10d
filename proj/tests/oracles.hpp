// Exhaustive minimum-metric decoders used as references for the Viterbi
// implementations. Words are tried in ascending order and the first minimum
// wins, which is the lexicographically smallest minimiser.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "pcode/outer_fec.hpp"
#include "pcode/secondary_codec.hpp"

namespace oracle {

inline pcode::Bits word(std::uint32_t v, std::size_t n) {
  pcode::Bits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>((v >> (n - 1 - i)) & 1U);
  return out;
}

inline pcode::Bits conv_ml(const pcode::Symbols& rx, std::size_t n) {
  int best = std::numeric_limits<int>::max();
  pcode::Bits arg;
  for (std::uint32_t v = 0; v < (1U << n); ++v) {
    const pcode::Bits info = word(v, n);
    const pcode::Bits cw = pcode::conv_encode(info);
    int metric = 0;
    for (std::size_t i = 0; i < cw.size(); ++i) {
      if (rx[i] != pcode::Symbol::erased && static_cast<std::uint8_t>(rx[i]) != cw[i]) ++metric;
    }
    if (metric < best) {
      best = metric;
      arg = info;
    }
  }
  return arg;
}

inline int trellis_metric(const pcode::TrellisCode& code, const pcode::ReceivedFrame& r, int state, int bit, int s,
                          pcode::StateKnowledge k) {
  const pcode::Multisymbol& m = code.branch_symbol(state, bit);
  if (k == pcode::StateKnowledge::known) return r.disagreements(m[s]);
  int best = std::numeric_limits<int>::max();
  for (int t = r.ones(); t <= std::min(r.ones() + r.erasures(), r.length); ++t) {
    best = std::min(best, r.disagreements(m[t]));
  }
  return best;
}

inline pcode::Bits trellis_ml(const pcode::TrellisCode& code, const std::vector<pcode::ReceivedFrame>& rx,
                              const std::vector<int>& states, pcode::StateKnowledge k) {
  const std::size_t n = rx.size();
  int best = std::numeric_limits<int>::max();
  pcode::Bits arg;
  for (std::uint32_t v = 0; v < (1U << n); ++v) {
    const pcode::Bits bits = word(v, n);
    int metric = 0;
    int state = 0;
    for (std::size_t i = 0; i < n; ++i) {
      metric += trellis_metric(code, rx[i], state, bits[i], states[i], k);
      state = code.next(state, bits[i]);
    }
    if (metric < best) {
      best = metric;
      arg = bits;
    }
  }
  return arg;
}

}  // namespace oracle
