#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace pcode {

/// Largest frame length representable by Frame (one bit per packet).
inline constexpr int kMaxFrameLength = 64;

/// Packet labels of one scheduling frame. Packet 1 is the most significant
/// of the `length` low bits, so the binary word reads left to right in
/// transmission order. A set bit means the packet belongs to user 1.
struct Frame {
  std::uint64_t bits = 0;
  int length = 0;

  static Frame from_string(std::string_view word);
  std::string to_string() const;

  int weight() const { return std::popcount(bits); }
  std::uint64_t mask() const { return length >= 64 ? ~0ULL : (1ULL << length) - 1; }
  /// Label of packet `i` (0-based, transmission order).
  bool packet(int i) const { return ((bits >> (length - 1 - i)) & 1U) != 0; }

  friend bool operator==(const Frame&, const Frame&) = default;
  friend auto operator<=>(const Frame&, const Frame&) = default;
};

int hamming_distance(const Frame& a, const Frame& b);

/// A frame after the channel: per-packet labels plus an erasure mask.
/// Bits under the erasure mask carry no information and are kept at zero.
struct ReceivedFrame {
  std::uint64_t bits = 0;
  std::uint64_t erased = 0;
  int length = 0;

  static ReceivedFrame clean(const Frame& f) { return {f.bits, 0, f.length}; }
  /// Number of unerased positions where `f` disagrees with what was received.
  int disagreements(const Frame& f) const { return std::popcount((bits ^ f.bits) & ~erased & f.mask()); }
  int ones() const { return std::popcount(bits & ~erased); }
  int erasures() const { return std::popcount(erased); }
  /// Binary word with 'e' at erased positions.
  std::string to_string() const;

  friend bool operator==(const ReceivedFrame&, const ReceivedFrame&) = default;
};

}  // namespace pcode
