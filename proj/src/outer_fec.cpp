#include "pcode/outer_fec.hpp"

#include <bit>

#include "pcode/detail/viterbi.hpp"

namespace pcode {

namespace {

// State holds the last two inputs, newest in bit 1: state = (u_{k-1} << 1) | u_{k-2}.
struct ConvTrellis {
  std::span<const Symbol> coded;

  static int outputs(int state, int bit) {
    const unsigned reg = (static_cast<unsigned>(bit) << 2) | static_cast<unsigned>(state);
    const int o1 = std::popcount(reg & ConvCode::kGen1) & 1;
    const int o2 = std::popcount(reg & ConvCode::kGen2) & 1;
    return (o1 << 1) | o2;
  }
  int num_states() const { return 4; }
  int next(int state, int bit) const { return (bit << 1) | (state >> 1); }
  int metric(std::size_t step, int state, int bit) const {
    const int out = outputs(state, bit);
    int cost = 0;
    const Symbol a = coded[2 * step];
    const Symbol b = coded[2 * step + 1];
    if (a != Symbol::erased && static_cast<int>(a) != (out >> 1)) ++cost;
    if (b != Symbol::erased && static_cast<int>(b) != (out & 1)) ++cost;
    return cost;
  }
};

}  // namespace

Symbols to_symbols(std::span<const std::uint8_t> bits) {
  Symbols out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? Symbol::one : Symbol::zero;
  return out;
}

Bits conv_encode(std::span<const std::uint8_t> info) {
  Bits out;
  out.reserve(ConvCode::coded_length(info.size()));
  int state = 0;
  auto push = [&](int bit) {
    const int o = ConvTrellis::outputs(state, bit);
    out.push_back(static_cast<std::uint8_t>(o >> 1));
    out.push_back(static_cast<std::uint8_t>(o & 1));
    state = (bit << 1) | (state >> 1);
  };
  for (std::uint8_t b : info) {
    if (b > 1) throw std::domain_error("conv_encode: input is not a bit string");
    push(b);
  }
  for (int i = 0; i < ConvCode::kTailBits; ++i) push(0);
  return out;
}

Bits conv_decode(std::span<const Symbol> coded) {
  if (coded.size() % 2 != 0 || coded.size() < 2 * ConvCode::kTailBits) {
    throw std::domain_error("conv_decode: coded length must be 2(N+2)");
  }
  const std::size_t steps = coded.size() / 2;
  auto bits = detail::lexmin_viterbi(ConvTrellis{coded}, steps, 0, 0);
  bits.resize(steps - ConvCode::kTailBits);
  return bits;
}

Bits conv_decode(std::span<const std::uint8_t> coded) {
  const Symbols symbols = to_symbols(coded);
  return conv_decode(std::span<const Symbol>(symbols));
}

}  // namespace pcode
