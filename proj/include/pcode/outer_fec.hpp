#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace pcode {

/// Channel symbol for a coded bit: a value or an erasure.
enum class Symbol : std::uint8_t { zero = 0, one = 1, erased = 2 };

using Bits = std::vector<std::uint8_t>;
using Symbols = std::vector<Symbol>;

Symbols to_symbols(std::span<const std::uint8_t> bits);

/// Terminated rate-1/2 convolutional code with memory 2 and generators
/// (1 + D + D^2, 1 + D^2), i.e. octal (7, 5), free distance 5.
struct ConvCode {
  static constexpr int kMemory = 2;
  static constexpr int kTailBits = 2;
  static constexpr unsigned kGen1 = 0b111;
  static constexpr unsigned kGen2 = 0b101;

  static std::size_t coded_length(std::size_t info_bits) { return 2 * (info_bits + kTailBits); }
};

/// N info bits -> 2(N+2) coded bits, pairs (out1, out2) per input bit.
Bits conv_encode(std::span<const std::uint8_t> info);

/// Maximum-likelihood decoding on the erasure channel: each unerased bit
/// that disagrees costs one, erasures cost nothing; paths start and end in
/// the zero state. Ties resolve to the lexicographically smallest info word.
Bits conv_decode(std::span<const Symbol> coded);
Bits conv_decode(std::span<const std::uint8_t> coded);

/// Row-write / column-read through a rows x (n/rows) matrix.
template <typename T>
std::vector<T> interleave(std::span<const T> seq, std::size_t rows) {
  if (rows == 0 || seq.size() % rows != 0) {
    throw std::domain_error("interleave: length " + std::to_string(seq.size()) + " not divisible by " +
                            std::to_string(rows));
  }
  const std::size_t cols = seq.size() / rows;
  std::vector<T> out(seq.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[c * rows + r] = seq[r * cols + c];
  }
  return out;
}

template <typename T>
std::vector<T> deinterleave(std::span<const T> seq, std::size_t rows) {
  if (rows == 0 || seq.size() % rows != 0) {
    throw std::domain_error("deinterleave: length " + std::to_string(seq.size()) + " not divisible by " +
                            std::to_string(rows));
  }
  const std::size_t cols = seq.size() / rows;
  std::vector<T> out(seq.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] = seq[c * rows + r];
  }
  return out;
}

template <typename T>
std::vector<T> interleave(const std::vector<T>& seq, std::size_t rows) {
  return interleave(std::span<const T>(seq), rows);
}
template <typename T>
std::vector<T> deinterleave(const std::vector<T>& seq, std::size_t rows) {
  return deinterleave(std::span<const T>(seq), rows);
}

}  // namespace pcode
