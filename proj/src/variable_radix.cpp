#include "pcode/variable_radix.hpp"

#include <algorithm>

#include "pcode/combinatorics.hpp"

namespace pcode {

std::vector<Interval> split_bins(std::uint64_t lo, std::uint64_t hi, std::uint64_t k) {
  if (k == 0) throw std::domain_error("split_bins: need k >= 1");
  if (hi < lo) throw std::domain_error("split_bins: need hi >= lo");
  const std::uint64_t total = hi - lo + 1;  // callers keep intervals below 2^63
  const std::uint64_t small = total / k;
  const std::uint64_t big_count = total % k;
  std::vector<Interval> bins;
  bins.reserve(k);
  std::uint64_t next = lo;
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t size = small + (i < big_count ? 1 : 0);
    if (size == 0) {
      bins.push_back({0, 0, true});
      continue;
    }
    bins.push_back({next, next + size - 1, false});
    next += size;
  }
  return bins;
}

namespace {

constexpr int kMaxSymbolBits = 62;

Interval full_range(int m) { return {0, (std::uint64_t{1} << m) - 1, false}; }

void check_symbol_bits(int m) {
  if (m < 1 || m > kMaxSymbolBits) {
    throw std::domain_error("variable-radix: bits per symbol must be in [1, " + std::to_string(kMaxSymbolBits) + "]");
  }
}

// Surplus factor of a frame: how many next-symbol bins ride along with each
// value of the current interval, or zero when packing does not apply. Capped
// so every carried bin keeps at least two values; a carried symbol therefore
// always needs a frame of its own, which lets the decoder find the end.
std::uint64_t pack_factor(const VariableRadixOptions& options, int m, std::uint64_t combos, std::uint64_t remaining) {
  if (!options.pack_leftover || combos < remaining) return 0;
  const std::uint64_t q = std::min(combos / remaining, std::uint64_t{1} << (m - 1));
  return q >= 2 ? q : 0;
}

}  // namespace

std::vector<Frame> vr_encode(std::span<const std::uint8_t> message, int bits_per_symbol, int frame_length,
                             std::span<const int> states, const VariableRadixOptions& options) {
  check_symbol_bits(bits_per_symbol);
  const FrameParams params(frame_length);
  const int f = params.frame_length();
  const auto m = static_cast<std::size_t>(bits_per_symbol);
  if (message.size() % m != 0) throw std::domain_error("vr_encode: message length not a multiple of m");

  std::vector<std::uint64_t> values;
  for (std::size_t i = 0; i < message.size(); i += m) {
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < m; ++b) {
      if (message[i + b] > 1) throw std::domain_error("vr_encode: message is not a bit string");
      v = (v << 1) | message[i + b];
    }
    values.push_back(v);
  }

  std::vector<Frame> frames;
  std::size_t next_state = 0;
  Interval current = full_range(bits_per_symbol);
  for (std::size_t sym = 0; sym < values.size(); ++sym) {
    const std::uint64_t value = values[sym];
    const bool last_symbol = sym + 1 == values.size();
    Interval carried = full_range(bits_per_symbol);
    while (current.size() > 1) {
      if (next_state == states.size()) throw InsufficientFrames(sym, frames.size(), current.size());
      const int s = states[next_state++];
      if (s < 0 || s > f) throw std::domain_error("vr_encode: state " + std::to_string(s) + " outside [0, F]");
      if (s == 0 || s == f) {
        frames.push_back(unrank_combination(f, s, 1));
        continue;
      }
      const std::uint64_t combos = binomial_u64(f, s);
      if (const std::uint64_t q = pack_factor(options, bits_per_symbol, combos, current.size())) {
        // This frame resolves the symbol; its surplus picks one of q bins of the next one.
        std::uint64_t next_bin = 0;
        if (!last_symbol) {
          const auto bins = split_bins(carried.lo, carried.hi, q);
          while (!bins[next_bin].contains(values[sym + 1])) ++next_bin;
          carried = bins[next_bin];
        }
        frames.push_back(unrank_combination(f, s, (value - current.lo) * q + next_bin + 1));
        current = {value, value, false};
        break;
      }
      const auto bins = split_bins(current.lo, current.hi, combos);
      std::uint64_t idx = 0;
      while (!bins[idx].contains(value)) ++idx;
      frames.push_back(unrank_combination(f, s, idx + 1));
      current = bins[idx];
    }
    current = carried;
  }
  return frames;
}

std::vector<std::uint8_t> vr_decode(std::span<const Frame> frames, int bits_per_symbol, std::span<const int> states,
                                    const VariableRadixOptions& options) {
  check_symbol_bits(bits_per_symbol);
  if (frames.size() != states.size()) throw IntegrityError("vr_decode: frame count differs from state count");
  std::vector<std::uint8_t> out;
  if (frames.empty()) return out;
  const int f = frames.front().length;
  const FrameParams params(f);

  auto emit = [&](std::uint64_t v) {
    for (int b = bits_per_symbol - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((v >> b) & 1U));
  };

  Interval current = full_range(bits_per_symbol);
  bool touched = false;  // current symbol has consumed at least one frame
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Frame& x = frames[i];
    const int s = states[i];
    if (x.length != f) throw IntegrityError("vr_decode: frame " + std::to_string(i) + " has a different length");
    if (x.weight() != s) {
      throw IntegrityError("vr_decode: frame " + std::to_string(i) + " (" + x.to_string() + ") has weight " +
                           std::to_string(x.weight()) + " but state is " + std::to_string(s));
    }
    touched = true;
    if (s == 0 || s == f) continue;
    const std::uint64_t combos = binomial_u64(f, s);
    const std::uint64_t rank0 = rank_combination(x) - 1;
    if (const std::uint64_t q = pack_factor(options, bits_per_symbol, combos, current.size())) {
      const std::uint64_t offset = rank0 / q;
      if (offset >= current.size()) {
        throw IntegrityError("vr_decode: frame " + std::to_string(i) + " names a value outside the interval");
      }
      emit(current.lo + offset);
      const auto bins = split_bins(0, (std::uint64_t{1} << bits_per_symbol) - 1, q);
      current = bins[rank0 % q];
      touched = false;
      continue;
    }
    const auto bins = split_bins(current.lo, current.hi, combos);
    if (bins[rank0].empty) {
      throw IntegrityError("vr_decode: frame " + std::to_string(i) + " names an empty bin");
    }
    current = bins[rank0];
    if (current.size() == 1) {
      emit(current.lo);
      current = full_range(bits_per_symbol);
      touched = false;
    }
  }
  // A symbol opened only by a packed frame carries no frames of its own.
  if (touched) throw IntegrityError("vr_decode: frames end in the middle of a symbol");
  return out;
}

}  // namespace pcode
