#include <algorithm>
#include <array>
#include <optional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pcode/detail/seeding.hpp"
#include "pcode/detail/viterbi.hpp"
#include "pcode/secondary_codec.hpp"

namespace pcode {

TrellisCode::TrellisCode(MultisymbolSet set, std::vector<std::size_t> labels)
    : set_(std::move(set)), labels_(std::move(labels)), num_states_(static_cast<int>(set_.size() / 2)) {
  if (set_.size() < 4 || set_.size() % 4 != 0) {
    throw std::domain_error("TrellisCode: set size must be a positive multiple of 4");
  }
  if (labels_.size() != set_.size()) throw std::domain_error("TrellisCode: one label per branch required");
  std::vector<bool> seen(set_.size(), false);
  for (std::size_t l : labels_) {
    if (l >= set_.size() || seen[l]) throw std::domain_error("TrellisCode: labels must be a permutation");
    seen[l] = true;
  }
  for (const auto& m : set_.symbols) {
    if (!m.is_feasible() || m.frame_length() != set_.frame_length) {
      throw std::domain_error("TrellisCode: infeasible multisymbol " + m.to_string());
    }
  }
}

std::pair<int, int> TrellisCode::predecessors(int state) const {
  const int half = num_states_ / 2;
  const int first = (state - (state % 2)) / 2;
  return {first, first + half};
}

Rational TrellisCode::out_separation() const {
  std::optional<Rational> lo;
  for (int a = 0; a < num_states_; ++a) {
    const Rational d = expected_distance(branch_symbol(a, 0), branch_symbol(a, 1));
    if (!lo || d < *lo) lo = d;
  }
  return *lo;
}

Rational TrellisCode::in_separation() const {
  std::optional<Rational> lo;
  for (int c = 0; c < num_states_; ++c) {
    const auto [a1, a2] = predecessors(c);
    const int b = c % 2;
    const Rational d = expected_distance(branch_symbol(a1, b), branch_symbol(a2, b));
    if (!lo || d < *lo) lo = d;
  }
  return *lo;
}

namespace {

// Branch-and-bound over label assignments. Distances are scaled by 2^F.
// Phase one finds the best (out, in) separation; phase two enumerates every
// labelling reaching it and keeps the one with the best error-event spectrum.
class LabelSearch {
 public:
  static constexpr int kEventDepth = 6;
  static constexpr std::size_t kMaxCandidates = 20000;

  LabelSearch(const MultisymbolSet& set, std::uint64_t seed) : n_(set.size()), states_(static_cast<int>(n_ / 2)) {
    dist_.assign(n_ * n_, 0);
    const auto probs = state_distribution_exact(FrameParams(set.frame_length));
    const std::int64_t scale = std::int64_t{1} << set.frame_length;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const Rational d = expected_distance(set.symbols[i], set.symbols[j], probs) * Rational(scale);
        dist_[i * n_ + j] = d.num();
        global_max_ = std::max(global_max_, d.num());
      }
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    if (seed != 0) {
      std::mt19937_64 rng(detail::derive_seed({seed}));
      std::shuffle(order_.begin(), order_.end(), rng);
    }
    build_constraints();
  }

  std::vector<std::size_t> run() {
    labels_.assign(n_, kUnset);
    used_.assign(n_, false);
    collecting_ = false;
    dfs(0);
    collecting_ = true;
    done_ = false;
    dfs(0);
    return best_labels_;
  }

  std::int64_t global_max() const { return global_max_; }
  std::int64_t best_out() const { return best_[0]; }
  std::int64_t best_in() const { return best_[1]; }

  // Counts of error-event distances: path pairs that split at some state and
  // either remerge or run for kEventDepth steps. The number of events is
  // fixed by the topology, so comparing counts from the smallest distance up
  // orders labellings like comparing the sorted distance lists.
  std::vector<std::uint32_t> event_histogram(const std::vector<std::size_t>& labels) const {
    std::vector<std::uint32_t> hist(static_cast<std::size_t>(kEventDepth * global_max_ + 1), 0);
    for (int a = 0; a < states_; ++a) walk(labels, a, a, 0, 0, hist);
    return hist;
  }

  // True when x has fewer events at the first distance where the two differ.
  static bool better_spectrum(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
    const auto [ix, iy] = std::mismatch(x.begin(), x.end(), y.begin());
    return ix != x.end() && *ix < *iy;
  }

 private:
  static constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  struct Pair {
    std::size_t a, b;
    bool out;
  };

  void walk(const std::vector<std::size_t>& labels, int s1, int s2, std::int64_t d, int depth,
            std::vector<std::uint32_t>& hist) const {
    if ((depth > 0 && s1 == s2) || depth == kEventDepth) {
      ++hist[static_cast<std::size_t>(d)];
      return;
    }
    for (int b1 = 0; b1 < 2; ++b1) {
      for (int b2 = 0; b2 < 2; ++b2) {
        if (depth == 0 && b1 >= b2) continue;
        const std::size_t l1 = labels[static_cast<std::size_t>(2 * s1 + b1)];
        const std::size_t l2 = labels[static_cast<std::size_t>(2 * s2 + b2)];
        walk(labels, (2 * s1 + b1) % states_, (2 * s2 + b2) % states_, d + dist_[l1 * n_ + l2], depth + 1, hist);
      }
    }
  }

  void build_constraints() {
    // Branch index 2*state + bit.
    for (int a = 0; a < states_; ++a) pairs_.push_back({static_cast<std::size_t>(2 * a), static_cast<std::size_t>(2 * a + 1), true});
    const int half = states_ / 2;
    for (int c = 0; c < states_; ++c) {
      const int first = (c - c % 2) / 2;
      const int b = c % 2;
      pairs_.push_back({static_cast<std::size_t>(2 * first + b), static_cast<std::size_t>(2 * (first + half) + b), false});
    }
    // Visit branches component by component so each pair closes early.
    std::vector<bool> seen(n_, false);
    for (std::size_t start = 0; start < n_; ++start) {
      if (seen[start]) continue;
      std::vector<std::size_t> stack{start};
      seen[start] = true;
      while (!stack.empty()) {
        const std::size_t br = stack.back();
        stack.pop_back();
        branch_order_.push_back(br);
        for (auto it = pairs_.rbegin(); it != pairs_.rend(); ++it) {
          const std::size_t other = it->a == br ? it->b : (it->b == br ? it->a : kUnset);
          if (other != kUnset && !seen[other]) {
            seen[other] = true;
            stack.push_back(other);
          }
        }
      }
    }
    pairs_closing_at_.resize(n_);
    std::vector<std::size_t> position(n_);
    for (std::size_t k = 0; k < n_; ++k) position[branch_order_[k]] = k;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      pairs_closing_at_[std::max(position[pairs_[p].a], position[pairs_[p].b])].push_back(p);
    }
  }

  void leaf() {
    const std::array<std::int64_t, 2> score{cur_out_, cur_in_};
    if (!collecting_) {
      if (best_labels_.empty() || score > best_) {
        best_ = score;
        best_labels_ = labels_;
        done_ = best_[0] == global_max_ && best_[1] == global_max_;
      }
      return;
    }
    if (score != best_) return;
    auto spectrum = event_histogram(labels_);
    if (best_spectrum_.empty() || better_spectrum(spectrum, best_spectrum_)) {
      best_spectrum_ = std::move(spectrum);
      best_labels_ = labels_;
    }
    done_ = ++candidates_ >= kMaxCandidates;
  }

  bool worth_descending() const {
    if (best_labels_.empty()) return true;
    const std::array<std::int64_t, 2> bound{cur_out_, cur_in_};
    return collecting_ ? cur_out_ >= best_[0] && cur_in_ >= best_[1] : bound > best_;
  }

  void dfs(std::size_t depth) {
    if (done_) return;
    if (depth == n_) {
      leaf();
      return;
    }
    const std::size_t branch = branch_order_[depth];
    for (std::size_t sym : order_) {
      if (used_[sym]) continue;
      labels_[branch] = sym;
      used_[sym] = true;
      const auto saved = std::array<std::int64_t, 2>{cur_out_, cur_in_};
      for (std::size_t p : pairs_closing_at_[depth]) {
        const std::int64_t d = dist_[labels_[pairs_[p].a] * n_ + labels_[pairs_[p].b]];
        std::int64_t& slot = pairs_[p].out ? cur_out_ : cur_in_;
        slot = std::min(slot, d);
      }
      if (worth_descending()) dfs(depth + 1);
      cur_out_ = saved[0];
      cur_in_ = saved[1];
      used_[sym] = false;
      labels_[branch] = kUnset;
      if (done_) return;
    }
  }

  std::size_t n_;
  int states_;
  std::vector<std::int64_t> dist_;
  std::int64_t global_max_ = 0;
  std::vector<std::size_t> order_;
  std::vector<Pair> pairs_;
  std::vector<std::size_t> branch_order_;
  std::vector<std::vector<std::size_t>> pairs_closing_at_;

  std::vector<std::size_t> labels_;
  std::vector<bool> used_;
  std::int64_t cur_out_ = std::numeric_limits<std::int64_t>::max();
  std::int64_t cur_in_ = std::numeric_limits<std::int64_t>::max();
  std::array<std::int64_t, 2> best_{};
  std::vector<std::size_t> best_labels_;
  std::vector<std::uint32_t> best_spectrum_;
  std::size_t candidates_ = 0;
  bool collecting_ = false;
  bool done_ = false;
};

struct InnerTrellis {
  const TrellisCode& code;
  std::span<const ReceivedFrame> received;
  std::span<const int> states;
  StateKnowledge knowledge;

  int num_states() const { return code.num_states(); }
  int next(int state, int bit) const { return code.next(state, bit); }
  int metric(std::size_t step, int state, int bit) const {
    const Multisymbol& m = code.branch_symbol(state, bit);
    const ReceivedFrame& r = received[step];
    if (knowledge == StateKnowledge::known) return r.disagreements(m[states[step]]);
    const int lo = r.ones();
    const int hi = std::min(lo + r.erasures(), r.length);
    int best = std::numeric_limits<int>::max();
    for (int s = lo; s <= hi; ++s) best = std::min(best, r.disagreements(m[s]));
    return best;
  }
};

}  // namespace

TrellisCode build_trellis(const MultisymbolSet& set, std::uint64_t seed) {
  if (set.size() != 12 && (set.size() % 4 != 0 || set.size() > 16)) {
    throw std::domain_error("build_trellis: set size must be a multiple of 4, at most 16 (12 for F=4)");
  }
  if (set.size() < 4) throw std::domain_error("build_trellis: need at least 4 multisymbols");
  LabelSearch search(set, seed);
  TrellisCode code(set, search.run());
  if (search.best_out() < search.global_max() || search.best_in() < search.global_max()) {
    const Rational scale(std::int64_t{1} << set.frame_length);
    code.warning = "label search reached out/in separation " + (Rational(search.best_out()) / scale).to_string() +
                   "/" + (Rational(search.best_in()) / scale).to_string() + ", below the set's largest distance " +
                   (Rational(search.global_max()) / scale).to_string();
  }
  return code;
}

std::vector<Rational> event_distances(const TrellisCode& code, int depth) {
  if (depth < 1) throw std::domain_error("event_distances: depth must be positive");
  const auto probs = state_distribution_exact(FrameParams(code.set().frame_length));
  std::vector<Rational> out;
  auto walk = [&](auto&& self, int s1, int s2, Rational d, int step) -> void {
    if ((step > 0 && s1 == s2) || step == depth) {
      out.push_back(d);
      return;
    }
    for (int b1 = 0; b1 < 2; ++b1) {
      for (int b2 = 0; b2 < 2; ++b2) {
        if (step == 0 && b1 >= b2) continue;
        const Rational e = expected_distance(code.branch_symbol(s1, b1), code.branch_symbol(s2, b2), probs);
        self(self, code.next(s1, b1), code.next(s2, b2), d + e, step + 1);
      }
    }
  };
  for (int a = 0; a < code.num_states(); ++a) walk(walk, a, a, Rational(0), 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Frame> trellis_encode(std::span<const std::uint8_t> bits, std::span<const int> states,
                                  const TrellisCode& code) {
  if (bits.size() != states.size()) throw std::domain_error("trellis_encode: one state per input bit required");
  const int f = code.set().frame_length;
  std::vector<Frame> frames;
  frames.reserve(bits.size());
  int state = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw std::domain_error("trellis_encode: input is not a bit string");
    if (states[i] < 0 || states[i] > f) throw std::domain_error("trellis_encode: state outside [0, F]");
    frames.push_back(code.branch_symbol(state, bits[i])[states[i]]);
    state = code.next(state, bits[i]);
  }
  return frames;
}

Bits trellis_decode(std::span<const ReceivedFrame> received, std::span<const int> states, const TrellisCode& code,
                    StateKnowledge knowledge) {
  const int f = code.set().frame_length;
  if (knowledge == StateKnowledge::known && states.size() != received.size()) {
    throw std::domain_error("trellis_decode: one state per received frame required");
  }
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (received[i].length != f) throw std::domain_error("trellis_decode: frame length mismatch");
    if (knowledge == StateKnowledge::known && (states[i] < 0 || states[i] > f)) {
      throw std::domain_error("trellis_decode: state outside [0, F]");
    }
  }
  if (received.empty()) return {};
  return detail::lexmin_viterbi(InnerTrellis{code, received, states, knowledge}, received.size(), 0, std::nullopt);
}

TrellisScheme::TrellisScheme(TrellisCode code, std::size_t interleaver_rows, StateKnowledge knowledge)
    : code_(std::move(code)), rows_(interleaver_rows), knowledge_(knowledge) {
  if (rows_ == 0) throw std::domain_error("TrellisScheme: interleaver needs at least one row");
}

std::vector<Frame> TrellisScheme::encode(std::span<const std::uint8_t> info, std::span<const int> states) const {
  if (states.size() != frames_for(info.size())) {
    throw std::domain_error("TrellisScheme::encode: need " + std::to_string(frames_for(info.size())) + " states");
  }
  const Bits coded = interleave(conv_encode(info), rows_);
  return trellis_encode(coded, states, code_);
}

Bits TrellisScheme::decode(std::span<const ReceivedFrame> received, std::span<const int> states) const {
  const Bits inner = trellis_decode(received, states, code_, knowledge_);
  return conv_decode(std::span<const std::uint8_t>(deinterleave(inner, rows_)));
}

}  // namespace pcode
