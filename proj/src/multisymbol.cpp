#include "pcode/multisymbol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace pcode {

bool Multisymbol::is_feasible() const {
  const int f = frame_length();
  if (f < 1 || representatives.size() != static_cast<std::size_t>(f) + 1) return false;
  for (int s = 0; s <= f; ++s) {
    const Frame& x = representatives[s];
    if (x.length != f || x.weight() != s) return false;
  }
  return true;
}

bool Multisymbol::is_minimal() const {
  if (!is_feasible()) return false;
  for (std::size_t s = 0; s + 1 < representatives.size(); ++s) {
    // Weights differ by one, so distance one means x_{s+1} covers x_s.
    if (hamming_distance(representatives[s], representatives[s + 1]) != 1) return false;
  }
  return true;
}

std::string Multisymbol::to_string() const {
  std::string out = "(";
  for (std::size_t s = 0; s < representatives.size(); ++s) {
    if (s != 0) out += ',';
    out += representatives[s].to_string();
  }
  return out + ")";
}

bool MultisymbolSet::is_uniform() const {
  return std::all_of(weights.begin(), weights.end(), [&](const Rational& w) { return w == weights.front(); });
}

MultisymbolSet MultisymbolSet::uniform(int frame_length, std::vector<Multisymbol> symbols) {
  MultisymbolSet set;
  set.frame_length = frame_length;
  const auto n = static_cast<std::int64_t>(symbols.size());
  set.symbols = std::move(symbols);
  set.weights.assign(set.symbols.size(), Rational(1, n == 0 ? 1 : n));
  return set;
}

Multisymbol basic_multisymbol(int frame_length) {
  const FrameParams params(frame_length);
  Multisymbol m;
  for (int s = 0; s <= params.frame_length(); ++s) {
    m.representatives.push_back(Frame{s == 64 ? ~0ULL : (std::uint64_t{1} << s) - 1, frame_length});
  }
  return m;
}

Rational expected_distance(const Multisymbol& a, const Multisymbol& b, std::span<const Rational> state_probs) {
  const int f = a.frame_length();
  if (f != b.frame_length() || a.representatives.size() != b.representatives.size()) {
    throw std::domain_error("expected_distance: multisymbols have different frame lengths");
  }
  if (state_probs.size() != a.representatives.size()) {
    throw std::domain_error("expected_distance: state distribution size does not match F+1");
  }
  Rational total;
  for (std::size_t s = 0; s < a.representatives.size(); ++s) {
    const int d = hamming_distance(a.representatives[s], b.representatives[s]);
    if (d != 0) total += state_probs[s] * Rational(d);
  }
  return total;
}

Rational expected_distance(const Multisymbol& a, const Multisymbol& b) {
  if (a.frame_length() != b.frame_length()) {
    throw std::domain_error("expected_distance: multisymbols have different frame lengths");
  }
  const auto probs = state_distribution_exact(FrameParams(a.frame_length()));
  return expected_distance(a, b, probs);
}

namespace {

// Distances scaled by 2^F: sum_s C(F,s) d_H(a_s, b_s).
class ScaledDistance {
 public:
  explicit ScaledDistance(int f) : f_(f) {
    if (f > 62) throw std::overflow_error("distance_spectrum: F too large");
    for (int s = 0; s <= f; ++s) coeff_.push_back(binomial_u64(f, s));
  }
  std::uint64_t operator()(const Multisymbol& a, const Multisymbol& b) const {
    std::uint64_t acc = 0;
    for (int s = 1; s < f_; ++s) {
      acc += coeff_[s] * static_cast<std::uint64_t>(std::popcount(a.representatives[s].bits ^ b.representatives[s].bits));
    }
    return acc;
  }
  Rational to_rational(std::uint64_t scaled) const {
    return {static_cast<std::int64_t>(scaled), std::int64_t{1} << f_};
  }

 private:
  int f_;
  std::vector<std::uint64_t> coeff_;
};

void require_shape(const MultisymbolSet& set, const char* who) {
  for (const auto& m : set.symbols) {
    if (!m.is_feasible() || m.frame_length() != set.frame_length) {
      throw std::domain_error(std::string(who) + ": symbol " + m.to_string() + " is not feasible for F=" +
                              std::to_string(set.frame_length));
    }
  }
}

}  // namespace

DistanceSpectrum distance_spectrum(const MultisymbolSet& set) {
  require_shape(set, "distance_spectrum");
  DistanceSpectrum spec;
  if (set.size() < 2) return spec;
  const ScaledDistance dist(set.frame_length);
  const bool store = set.size() <= DistanceSpectrum::kMaxStoredPairs;
  std::map<std::uint64_t, std::uint64_t> scaled_hist;
  std::uint64_t lo = ~0ULL;
  std::uint64_t hi = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const std::uint64_t d = dist(set.symbols[i], set.symbols[j]);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      ++scaled_hist[d];
      if (store) spec.pairs.push_back({i, j, dist.to_rational(d)});
    }
  }
  spec.min = dist.to_rational(lo);
  spec.max = dist.to_rational(hi);
  for (const auto& [d, n] : scaled_hist) {
    spec.histogram[dist.to_rational(d)] = n;
    spec.pair_count += n;
  }
  return spec;
}

Rational min_expected_distance(const MultisymbolSet& set) {
  require_shape(set, "min_expected_distance");
  if (set.size() < 2) return {};
  const ScaledDistance dist(set.frame_length);
  std::uint64_t lo = ~0ULL;
  for (std::size_t i = 0; i < set.size() && lo != 0; ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) lo = std::min(lo, dist(set.symbols[i], set.symbols[j]));
  }
  return dist.to_rational(lo);
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<Rational> induced_frame_distribution(const MultisymbolSet& set) {
  const int f = set.frame_length;
  if (f < 1 || f > 20) throw std::domain_error("induced_frame_distribution: F must be in [1, 20]");
  require_shape(set, "induced_frame_distribution");
  if (set.weights.size() != set.symbols.size()) {
    throw std::domain_error("induced_frame_distribution: weights and symbols differ in count");
  }
  const auto probs = state_distribution_exact(FrameParams(f));
  std::vector<Rational> px(std::size_t{1} << f);
  for (std::size_t t = 0; t < set.size(); ++t) {
    for (int s = 0; s <= f; ++s) px[set.symbols[t].representatives[s].bits] += set.weights[t] * probs[s];
  }
  return px;
}

ValidationReport validate_set(const MultisymbolSet& set) {
  ValidationReport report;
  const int f = set.frame_length;

  ValidationCheck shape{"shape", true, {}};
  if (f < 1 || f > 20) {
    shape.passed = false;
    shape.offending.push_back("frame length " + std::to_string(f) + " outside [1, 20]");
  }
  if (set.symbols.empty()) {
    shape.passed = false;
    shape.offending.push_back("set is empty");
  }
  if (set.weights.size() != set.symbols.size()) {
    shape.passed = false;
    shape.offending.push_back(std::to_string(set.weights.size()) + " weights for " +
                              std::to_string(set.symbols.size()) + " symbols");
  }
  report.checks.push_back(shape);
  if (!shape.passed) return report;

  ValidationCheck feasible{"feasibility", true, {}};
  ValidationCheck minimal{"minimality", true, {}};
  for (std::size_t t = 0; t < set.size(); ++t) {
    const auto& m = set.symbols[t];
    const std::string label = "t=" + std::to_string(t + 1) + " " + m.to_string();
    if (m.frame_length() != f || !m.is_feasible()) {
      feasible.passed = false;
      feasible.offending.push_back(label);
    } else if (!m.is_minimal()) {
      minimal.passed = false;
      minimal.offending.push_back(label);
    }
  }
  if (!feasible.passed) {
    minimal.passed = false;
    minimal.offending.push_back("skipped: infeasible symbols present");
  }
  report.checks.push_back(feasible);
  report.checks.push_back(minimal);

  ValidationCheck norm{"weight normalization", true, {}};
  Rational total;
  for (std::size_t t = 0; t < set.size(); ++t) {
    if (set.weights[t] < Rational(0)) {
      norm.passed = false;
      norm.offending.push_back("t=" + std::to_string(t + 1) + " has negative weight " + set.weights[t].to_string());
    }
    total += set.weights[t];
  }
  if (total != Rational(1)) {
    norm.passed = false;
    norm.offending.push_back("weights sum to " + total.to_string());
  }
  report.checks.push_back(norm);

  ValidationCheck marginal{"marginal", true, {}};
  if (!feasible.passed) {
    marginal.passed = false;
    marginal.offending.push_back("skipped: infeasible symbols present");
  } else {
    const auto px = induced_frame_distribution(set);
    const auto probs = state_distribution_exact(FrameParams(f));
    for (int s = 0; s <= f; ++s) {
      const auto count = binomial_u64(f, s);
      const Rational want = probs[s] * Rational(1, static_cast<std::int64_t>(count));
      for (std::uint64_t r = 1; r <= count; ++r) {
        const Frame x = unrank_combination(f, s, r);
        if (px[x.bits] != want) {
          marginal.passed = false;
          marginal.offending.push_back(x.to_string() + ": P_X=" + px[x.bits].to_string() + ", want " +
                                       want.to_string());
        }
      }
    }
  }
  report.checks.push_back(marginal);
  return report;
}

double errorless_capacity(int frame_length) {
  const FrameParams params(frame_length);
  const auto probs = state_distribution(params);
  double bits = 0.0;
  for (int s = 0; s <= params.frame_length(); ++s) {
    bits += probs[s] * std::log2(static_cast<double>(binomial(params.frame_length(), s)));
  }
  return bits;
}

}  // namespace pcode
