#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "pcode/detail/seeding.hpp"
#include "pcode/multisymbol.hpp"

namespace pcode {

namespace {

constexpr int kMaxConstructF = 12;

// Dinic max-flow on a small graph; adjacency order decides which of the
// equivalent maximum flows is found.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

  int add_edge(int from, int to, int cap) {
    adj_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
    return static_cast<int>(edges_.size()) - 2;
  }

  template <typename Rng>
  void shuffle_adjacency(Rng& rng) {
    for (auto& list : adj_) std::shuffle(list.begin(), list.end(), rng);
  }

  long run(int source, int sink) {
    long total = 0;
    while (bfs(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (int pushed = dfs(source, sink, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

  int flow_on(int edge) const { return edges_[edge ^ 1].cap; }

 private:
  struct Edge {
    int to;
    int cap;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{source};
    level_[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int e : adj_[u]) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          queue.push_back(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  int dfs(int u, int sink, int limit) {
    if (u == sink) return limit;
    for (int& i = next_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      const int e = adj_[u][i];
      const int v = edges_[e].to;
      if (edges_[e].cap <= 0 || level_[v] != level_[u] + 1) continue;
      if (const int pushed = dfs(v, sink, std::min(limit, edges_[e].cap))) {
        edges_[e].cap -= pushed;
        edges_[e ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<int> next_;
};

struct Layer {
  std::vector<std::uint64_t> nodes;  // ascending binary value
  int multiplicity = 0;              // paths through each node
};

// One (u -> v) edge between consecutive layers with the number of paths on it.
struct EdgeLoad {
  int from = 0;
  int to = 0;
  int load = 0;
};

// Edge loads between layer s and s+1 with the smallest uniform edge capacity
// that still routes every path. Returns the capacity used.
int layer_flow(const Layer& lo, const Layer& hi, int frame_length, int paths, std::mt19937_64* rng,
               std::vector<EdgeLoad>& out) {
  const int n_lo = static_cast<int>(lo.nodes.size());
  const int n_hi = static_cast<int>(hi.nodes.size());
  std::vector<int> hi_index(std::size_t{1} << frame_length, -1);
  for (int j = 0; j < n_hi; ++j) hi_index[hi.nodes[j]] = j;

  const int s = std::popcount(lo.nodes.front());
  const int out_degree = frame_length - s;
  const int in_degree = s + 1;
  int cap = std::max((lo.multiplicity + out_degree - 1) / out_degree, (hi.multiplicity + in_degree - 1) / in_degree);
  for (;; ++cap) {
    MaxFlow flow(n_lo + n_hi + 2);
    const int source = n_lo + n_hi;
    const int sink = source + 1;
    std::vector<EdgeLoad> candidates;
    std::vector<int> handles;
    for (int i = 0; i < n_lo; ++i) {
      flow.add_edge(source, i, lo.multiplicity);
      // Successors in ascending binary value: set one zero bit, lowest first.
      for (int b = 0; b < frame_length; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        if (lo.nodes[i] & bit) continue;
        const int j = hi_index[lo.nodes[i] | bit];
        handles.push_back(flow.add_edge(i, n_lo + j, cap));
        candidates.push_back({i, j, 0});
      }
    }
    for (int j = 0; j < n_hi; ++j) flow.add_edge(n_lo + j, sink, hi.multiplicity);
    if (rng != nullptr) flow.shuffle_adjacency(*rng);
    if (flow.run(source, sink) == paths) {
      out.clear();
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        candidates[k].load = flow.flow_on(handles[k]);
        if (candidates[k].load > 0) out.push_back(candidates[k]);
      }
      return cap;
    }
    if (cap > paths) throw std::logic_error("construct_set: layer flow infeasible");
  }
}

struct Attempt {
  MultisymbolSet set;
  std::vector<int> capacities;
};

Attempt build_once(int f, int paths, std::mt19937_64* rng) {
  std::vector<Layer> layers(f + 1);
  for (int s = 0; s <= f; ++s) {
    const auto count = binomial_u64(f, s);
    for (std::uint64_t r = 1; r <= count; ++r) layers[s].nodes.push_back(unrank_combination(f, s, r).bits);
    std::sort(layers[s].nodes.begin(), layers[s].nodes.end());
    layers[s].multiplicity = paths / static_cast<int>(count);
  }
  std::vector<std::uint64_t> weights(f + 1);
  for (int s = 0; s <= f; ++s) weights[s] = binomial_u64(f, s);

  // route[p][s] = node bits of path p at layer s.
  std::vector<std::vector<std::uint64_t>> route(paths, std::vector<std::uint64_t>(f + 1, 0));
  auto partial_distance = [&](int a, int b, int upto) {
    std::uint64_t d = 0;
    for (int s = 1; s <= upto; ++s) d += weights[s] * static_cast<std::uint64_t>(std::popcount(route[a][s] ^ route[b][s]));
    return d;
  };

  Attempt attempt;
  std::vector<std::vector<int>> at_node(std::size_t{1} << f);
  {
    std::vector<int> all(paths);
    std::iota(all.begin(), all.end(), 0);
    at_node[0] = std::move(all);
  }
  std::vector<EdgeLoad> loads;
  for (int s = 0; s < f; ++s) {
    attempt.capacities.push_back(layer_flow(layers[s], layers[s + 1], f, paths, rng, loads));
    std::vector<std::vector<int>> next_at(std::size_t{1} << f);
    // Group edges by source node; edges per source are in ascending target order.
    std::size_t k = 0;
    std::vector<EdgeLoad> sorted = loads;
    std::stable_sort(sorted.begin(), sorted.end(), [&](const EdgeLoad& a, const EdgeLoad& b) {
      return a.from != b.from ? a.from < b.from : layers[s + 1].nodes[a.to] < layers[s + 1].nodes[b.to];
    });
    while (k < sorted.size()) {
      const int from = sorted[k].from;
      std::vector<int> waiting = at_node[layers[s].nodes[from]];
      if (rng != nullptr) std::shuffle(waiting.begin(), waiting.end(), *rng);
      for (; k < sorted.size() && sorted[k].from == from; ++k) {
        const std::uint64_t target = layers[s + 1].nodes[sorted[k].to];
        auto& colocated = next_at[target];
        for (int slot = 0; slot < sorted[k].load; ++slot) {
          // Send the path furthest (so far) from those already at the target.
          std::size_t pick = 0;
          std::uint64_t pick_score = 0;
          for (std::size_t w = 0; w < waiting.size(); ++w) {
            std::uint64_t score = std::numeric_limits<std::uint64_t>::max();
            for (int other : colocated) score = std::min(score, partial_distance(waiting[w], other, s));
            if (w == 0 || score > pick_score) {
              pick = w;
              pick_score = score;
            }
          }
          const int p = waiting[pick];
          waiting.erase(waiting.begin() + static_cast<std::ptrdiff_t>(pick));
          route[p][s + 1] = target;
          colocated.push_back(p);
        }
      }
    }
    at_node = std::move(next_at);
  }

  std::vector<Multisymbol> symbols(paths);
  for (int p = 0; p < paths; ++p) {
    for (int s = 0; s <= f; ++s) symbols[p].representatives.push_back(Frame{route[p][s], f});
  }
  std::sort(symbols.begin(), symbols.end(), [](const Multisymbol& a, const Multisymbol& b) {
    return a.representatives < b.representatives;
  });
  attempt.set = MultisymbolSet::uniform(f, std::move(symbols));
  return attempt;
}

// Transitions where every edge can carry at most one path.
bool disjoint_feasible(int f, int s, int paths) {
  const auto lo = static_cast<int>(binomial_u64(f, s));
  const auto hi = static_cast<int>(binomial_u64(f, s + 1));
  return paths / lo <= f - s && paths / hi <= s + 1;
}

}  // namespace

ConstructionStrategy parse_strategy(std::string_view name) {
  if (name == "greedy_edge_disjoint" || name == "greedy") return ConstructionStrategy::greedy_edge_disjoint;
  if (name == "randomized_restart" || name == "randomized") return ConstructionStrategy::randomized_restart;
  throw std::domain_error("unknown construction strategy '" + std::string(name) + "'");
}

std::vector<int> max_edge_load(const MultisymbolSet& set) {
  const int f = set.frame_length;
  std::vector<int> out(f, 0);
  for (int s = 0; s < f; ++s) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> count;
    for (const auto& m : set.symbols) {
      out[s] = std::max(out[s], ++count[{m.representatives[s].bits, m.representatives[s + 1].bits}]);
    }
  }
  return out;
}

MultisymbolSet construct_set(int frame_length, const ConstructionOptions& options) {
  const FrameParams params(frame_length);
  if (frame_length > kMaxConstructF) {
    throw std::domain_error("construct_set: F must be at most " + std::to_string(kMaxConstructF));
  }
  const int f = params.frame_length();
  const int paths = static_cast<int>(lcm_binomials(params));

  int runs = 1;
  if (options.strategy == ConstructionStrategy::randomized_restart) {
    runs = options.restarts > 0
               ? options.restarts
               : static_cast<int>(std::clamp<long>(4'000'000L / (static_cast<long>(paths) * paths), 1L, 64L));
  }

  std::optional<MultisymbolSet> best;
  Rational best_min(-1);
  std::string last_failure;
  for (int run = 0; run < runs; ++run) {
    std::optional<std::mt19937_64> rng;
    if (run > 0) rng.emplace(detail::derive_seed({options.seed, static_cast<std::uint64_t>(run)}));
    Attempt attempt = build_once(f, paths, rng ? &*rng : nullptr);

    const auto report = validate_set(attempt.set);
    bool ok = report.ok();
    if (!ok) last_failure = "constructed set failed validation";
    for (int s = 0; s < f && ok; ++s) {
      if (disjoint_feasible(f, s, paths) && attempt.capacities[s] != 1) {
        ok = false;
        last_failure = "edge-disjoint routing not found between layers " + std::to_string(s) + " and " +
                       std::to_string(s + 1);
      }
    }
    const Rational d = min_expected_distance(attempt.set);
    if (!ok) {
      if (!best) best = attempt.set;
      continue;
    }
    if (d > best_min) {
      best_min = d;
      best = std::move(attempt.set);
    }
  }
  if (best_min < Rational(0)) {
    throw ConstructionError("construct_set: " + last_failure + " for F=" + std::to_string(f), best);
  }
  return *best;
}

}  // namespace pcode
