#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcode/frame.hpp"

namespace pcode {

/// Inclusive integer interval; empty when lo > hi.
struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool empty = false;

  std::uint64_t size() const { return empty ? 0 : hi - lo + 1; }
  bool contains(std::uint64_t v) const { return !empty && v >= lo && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Contiguous partition of [lo, hi] into k bins: the first (B mod k) bins
/// hold ceil(B/k) values and the rest floor(B/k); with k > B the trailing
/// k - B bins are empty.
std::vector<Interval> split_bins(std::uint64_t lo, std::uint64_t hi, std::uint64_t k);

struct VariableRadixOptions {
  /// When a frame offers at least twice as many combinations as values left
  /// in the interval, spend the surplus on the first split of the next symbol.
  bool pack_leftover = false;
};

class InsufficientFrames : public std::runtime_error {
 public:
  InsufficientFrames(std::size_t symbols_done, std::size_t frames_used, std::uint64_t remaining)
      : std::runtime_error("variable-radix: state sequence exhausted after " + std::to_string(frames_used) +
                           " frames; " + std::to_string(symbols_done) + " symbols complete, " +
                           std::to_string(remaining) + " candidate values left in current symbol"),
        symbols_done_(symbols_done),
        frames_used_(frames_used),
        remaining_(remaining) {}

  std::size_t symbols_done() const { return symbols_done_; }
  std::size_t frames_used() const { return frames_used_; }
  std::uint64_t remaining_values() const { return remaining_; }

 private:
  std::size_t symbols_done_;
  std::size_t frames_used_;
  std::uint64_t remaining_;
};

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Encodes `message` (bits, MSB first, length a multiple of m) symbol by
/// symbol, one frame per entry of `states`, stopping as soon as the last
/// symbol is pinned down. States 0 and F send the forced all-zero/all-one
/// frame. Throws InsufficientFrames if the states run out first.
std::vector<Frame> vr_encode(std::span<const std::uint8_t> message, int bits_per_symbol, int frame_length,
                             std::span<const int> states, const VariableRadixOptions& options = {});

/// Inverse of vr_encode. The frame weights must equal `states`; a mismatch,
/// a rank naming an empty bin, or a symbol left incomplete by the last frame
/// raises IntegrityError.
std::vector<std::uint8_t> vr_decode(std::span<const Frame> frames, int bits_per_symbol, std::span<const int> states,
                                    const VariableRadixOptions& options = {});

}  // namespace pcode
