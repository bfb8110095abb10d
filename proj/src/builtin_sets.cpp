#include <array>
#include <string_view>

#include "pcode/multisymbol.hpp"

namespace pcode {

namespace {

using Row = std::array<std::string_view, 5>;

// Set with minimum expected distance 1/2; t1 and t4 share the 0011->0111 edge.
constexpr std::array<Row, 12> kExample1{{
    {"0000", "0001", "0011", "0111", "1111"},
    {"0000", "0001", "0101", "1101", "1111"},
    {"0000", "0001", "1001", "1011", "1111"},
    {"0000", "0010", "0011", "0111", "1111"},
    {"0000", "0010", "1010", "1011", "1111"},
    {"0000", "0010", "1010", "1110", "1111"},
    {"0000", "0100", "0101", "1101", "1111"},
    {"0000", "0100", "0110", "0111", "1111"},
    {"0000", "0100", "0110", "1110", "1111"},
    {"0000", "1000", "1001", "1011", "1111"},
    {"0000", "1000", "1100", "1101", "1111"},
    {"0000", "1000", "1100", "1110", "1111"},
}};

// Every edge past the first layer used exactly once; minimum distance 1.
constexpr std::array<Row, 12> kExample2a{{
    {"0000", "0001", "0011", "0111", "1111"},
    {"0000", "0001", "0101", "1101", "1111"},
    {"0000", "0001", "1001", "1011", "1111"},
    {"0000", "0010", "0011", "1011", "1111"},
    {"0000", "0010", "0110", "0111", "1111"},
    {"0000", "0010", "1010", "1110", "1111"},
    {"0000", "0100", "0101", "0111", "1111"},
    {"0000", "0100", "0110", "1110", "1111"},
    {"0000", "0100", "1100", "1101", "1111"},
    {"0000", "1000", "1001", "1101", "1111"},
    {"0000", "1000", "1010", "1011", "1111"},
    {"0000", "1000", "1100", "1110", "1111"},
}};

// Same graph as 2a, different paths; minimum distance 3/4.
constexpr std::array<Row, 12> kExample2b{{
    {"0000", "0001", "0011", "0111", "1111"},
    {"0000", "0001", "0101", "0111", "1111"},
    {"0000", "0001", "1001", "1011", "1111"},
    {"0000", "0010", "0011", "1011", "1111"},
    {"0000", "0010", "0110", "0111", "1111"},
    {"0000", "0010", "1010", "1011", "1111"},
    {"0000", "0100", "0101", "1101", "1111"},
    {"0000", "0100", "0110", "1110", "1111"},
    {"0000", "0100", "1100", "1101", "1111"},
    {"0000", "1000", "1001", "1101", "1111"},
    {"0000", "1000", "1010", "1110", "1111"},
    {"0000", "1000", "1100", "1110", "1111"},
}};

// Repeated rows t1=t2, t5=t6, t10=t11, kept exactly as tabulated. Note the
// table over-represents 1101 and under-represents 1011 at s=3.
constexpr std::array<Row, 12> kExample3{{
    {"0000", "0001", "0011", "0111", "1111"},
    {"0000", "0001", "0011", "0111", "1111"},
    {"0000", "0001", "0101", "0111", "1111"},
    {"0000", "0010", "0110", "1110", "1111"},
    {"0000", "0010", "1010", "1011", "1111"},
    {"0000", "0010", "1010", "1011", "1111"},
    {"0000", "0100", "0101", "1101", "1111"},
    {"0000", "0100", "0110", "1110", "1111"},
    {"0000", "0100", "1100", "1101", "1111"},
    {"0000", "1000", "1001", "1101", "1111"},
    {"0000", "1000", "1001", "1101", "1111"},
    {"0000", "1000", "1100", "1110", "1111"},
}};

// Non-uniform 8-symbol input: P_T = 1/6 for t=1..4, 1/12 for t=5..8,
// read off the nonzero entries of the T -> X transition matrix.
constexpr std::array<Row, 8> kExample3Weighted{{
    {"0000", "0001", "0011", "0111", "1111"},
    {"0000", "0010", "0110", "1110", "1111"},
    {"0000", "0100", "1100", "1101", "1111"},
    {"0000", "1000", "1001", "1011", "1111"},
    {"0000", "0001", "0101", "0111", "1111"},
    {"0000", "0010", "1010", "1110", "1111"},
    {"0000", "0100", "0101", "1101", "1111"},
    {"0000", "1000", "1010", "1011", "1111"},
}};

template <std::size_t N>
std::vector<Multisymbol> to_symbols(const std::array<Row, N>& rows) {
  std::vector<Multisymbol> out;
  out.reserve(N);
  for (const Row& row : rows) {
    Multisymbol m;
    for (std::string_view word : row) m.representatives.push_back(Frame::from_string(word));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

std::vector<std::string> builtin_set_names() { return {"example1", "example2a", "example2b", "example3", "example3w"}; }

MultisymbolSet builtin_set(std::string_view name) {
  if (name == "example1") return MultisymbolSet::uniform(4, to_symbols(kExample1));
  if (name == "example2a") return MultisymbolSet::uniform(4, to_symbols(kExample2a));
  if (name == "example2b") return MultisymbolSet::uniform(4, to_symbols(kExample2b));
  if (name == "example3") return MultisymbolSet::uniform(4, to_symbols(kExample3));
  if (name == "example3w") {
    MultisymbolSet set;
    set.frame_length = 4;
    set.symbols = to_symbols(kExample3Weighted);
    for (int t = 0; t < 8; ++t) set.weights.emplace_back(1, t < 4 ? 6 : 12);
    return set;
  }
  throw std::domain_error("builtin_set: unknown set '" + std::string(name) + "'");
}

}  // namespace pcode
