#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcode/combinatorics.hpp"
#include "pcode/frame.hpp"
#include "pcode/rational.hpp"

namespace pcode {

/// Codebook entry for one secondary input symbol: the frame sent in each
/// primary state, representatives[s] having weight s.
struct Multisymbol {
  std::vector<Frame> representatives;

  int frame_length() const { return representatives.empty() ? 0 : representatives.front().length; }
  const Frame& operator[](int state) const { return representatives.at(static_cast<std::size_t>(state)); }

  /// Every representative has the weight of its state.
  bool is_feasible() const;
  /// Feasible, and adjacent representatives differ in exactly one packet.
  bool is_minimal() const;

  std::string to_string() const;  // "(0000,0001,...)"

  friend bool operator==(const Multisymbol&, const Multisymbol&) = default;
};

/// The inner-code alphabet: symbols with their input probabilities.
struct MultisymbolSet {
  int frame_length = 0;
  std::vector<Multisymbol> symbols;
  std::vector<Rational> weights;

  std::size_t size() const { return symbols.size(); }
  bool is_uniform() const;

  /// Builds a set with weights 1/L.
  static MultisymbolSet uniform(int frame_length, std::vector<Multisymbol> symbols);
};

/// 0...0, 0...01, 0...011, ..., 1...1.
Multisymbol basic_multisymbol(int frame_length);

/// Sum over s of P_S(s) * d_H(a_s, b_s). States 0 and F contribute nothing
/// for feasible symbols since their representatives are forced.
Rational expected_distance(const Multisymbol& a, const Multisymbol& b, std::span<const Rational> state_probs);
Rational expected_distance(const Multisymbol& a, const Multisymbol& b);

struct PairDistance {
  std::size_t first = 0;
  std::size_t second = 0;
  Rational distance;
};

struct DistanceSpectrum {
  /// All unordered pairs (first < second), in lexicographic index order.
  /// Left empty when the set exceeds kMaxStoredPairs symbols; min, max and
  /// histogram are always complete.
  std::vector<PairDistance> pairs;
  Rational min;
  Rational max;
  std::map<Rational, std::uint64_t> histogram;
  std::uint64_t pair_count = 0;

  static constexpr std::size_t kMaxStoredPairs = 4096;
};

DistanceSpectrum distance_spectrum(const MultisymbolSet& set);

/// Smallest pairwise expected distance, without building the spectrum.
Rational min_expected_distance(const MultisymbolSet& set);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> offending;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  const ValidationCheck* find(std::string_view name) const;
};

/// Checks per-symbol shape, feasibility and minimality, weight
/// normalisation, and that the induced frame distribution is
/// P_X(x) = P_S(s) / C(F, s) for every frame x of weight s.
ValidationReport validate_set(const MultisymbolSet& set);

/// P_X(x) for every frame of the set's length, indexed by x.bits.
std::vector<Rational> induced_frame_distribution(const MultisymbolSet& set);

/// Tables for F = 4: "example1", "example2a", "example2b", "example3"
/// (12 rows each, uniform weights) and "example3w" (8 symbols with
/// weights 1/6 and 1/12). Throws std::domain_error for unknown names.
MultisymbolSet builtin_set(std::string_view name);
std::vector<std::string> builtin_set_names();

enum class ConstructionStrategy { greedy_edge_disjoint, randomized_restart };

ConstructionStrategy parse_strategy(std::string_view name);

struct ConstructionOptions {
  ConstructionStrategy strategy = ConstructionStrategy::randomized_restart;
  std::uint64_t seed = 0;
  /// Restarts for randomized_restart; 0 picks a default scaled to the set size.
  int restarts = 0;
};

class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::optional<MultisymbolSet> best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const std::optional<MultisymbolSet>& best() const { return best_; }

 private:
  std::optional<MultisymbolSet> best_;
};

/// Builds L = lcm_binomials(F) minimal multisymbols as paths 0^F -> 1^F in
/// the layered graph of constant-weight frames, spreading paths over edges
/// so that each edge carries as few paths as the layer allows (at most one
/// wherever that is feasible). The best set by minimum expected distance is
/// returned. Deterministic for a given (F, options). F <= 12.
MultisymbolSet construct_set(int frame_length, const ConstructionOptions& options);

/// Per layer transition s -> s+1, the largest number of paths sharing one edge.
std::vector<int> max_edge_load(const MultisymbolSet& set);

/// sum_s P_S(s) log2 C(F, s), bits per frame.
double errorless_capacity(int frame_length);

// Text format: one multisymbol per line as F+1 binary words ordered by state,
// optional trailing "w=<rational>"; '#' starts a comment line.
MultisymbolSet parse_set(std::istream& in);
MultisymbolSet read_set_file(const std::string& path);
void write_set(std::ostream& out, const MultisymbolSet& set);
void write_set_file(const std::string& path, const MultisymbolSet& set);

/// Builtin name or path to a set file.
MultisymbolSet load_set(const std::string& name_or_path);

}  // namespace pcode
