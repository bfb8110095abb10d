#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pcode/channel.hpp"
#include "pcode/secondary_codec.hpp"

namespace pcode {

enum class SchemeKind { naive, trellis };

std::string to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(std::string_view name);

/// One curve of an experiment: a scheme and, for trellis, its multisymbol set.
struct SchemeEntry {
  SchemeKind scheme = SchemeKind::trellis;
  std::string set = "example2a";  // builtin name or set file; "-" for naive
  std::uint64_t trellis_seed = 0;

  std::string set_label() const { return scheme == SchemeKind::naive ? "-" : set; }
};

struct SimConfig {
  int frame_length = 4;
  std::vector<SchemeEntry> entries{{SchemeKind::naive, "-", 0}, {SchemeKind::trellis, "example2a", 0}};
  ChannelKind channel = ChannelKind::bec;
  std::vector<double> p_grid{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::vector<int> packet_lengths{30};
  int iterations = 10000;
  std::size_t interleaver_rows = 8;
  std::uint64_t seed = 1;
  StateKnowledge knowledge = StateKnowledge::known;
  /// Worker threads; 0 uses the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

/// JSON object with keys F, entries [{scheme, set, trellis_seed}], channel,
/// p_grid, N, iterations, lambda, seed, threads, state_knowledge. Missing
/// keys keep their defaults.
SimConfig parse_sim_config(std::istream& in);
SimConfig read_sim_config(const std::string& path);

struct SimRow {
  std::string scheme;
  std::string set;
  int packet_length = 0;
  double p = 0.0;
  int iterations = 0;
  long errors = 0;
  double per = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;  // not serialised

  friend bool operator==(const SimRow& a, const SimRow& b) {
    return a.scheme == b.scheme && a.set == b.set && a.packet_length == b.packet_length && a.p == b.p &&
           a.iterations == b.iterations && a.errors == b.errors && a.per == b.per && a.ci_lo == b.ci_lo &&
           a.ci_hi == b.ci_hi && a.seed == b.seed;
  }
};

struct SimResult {
  std::vector<SimRow> rows;

  const SimRow* find(std::string_view scheme, std::string_view set, int packet_length, double p) const;
};

struct Interval95 {
  double lo;
  double hi;
};

/// Wilson score interval at 95% confidence.
Interval95 wilson_interval(long errors, long trials);

/// Packet error counts for every (entry, N, p). All entries and all p values
/// of one (N, iteration) see the same info bits, states and channel
/// uniforms, so comparisons are paired. Deterministic given the config.
SimResult run_simulation(const SimConfig& config);

/// CSV with header scheme,set,N,p,iterations,errors,per,ci_lo,ci_hi,seed.
void write_csv(std::ostream& out, const SimResult& result);
std::string to_csv(const SimResult& result);
SimResult parse_csv(std::istream& in);

/// Python/matplotlib script plotting PER against p from a results CSV.
std::string plot_script(const std::string& csv_path);

struct ComparisonLine {
  int packet_length = 0;
  double p = 0.0;
  /// Row indices into SimResult, best (lowest PER) first.
  std::vector<std::size_t> ranking;
  /// significant[k]: CI of ranking[k] lies strictly below that of ranking[k+1].
  std::vector<bool> significant;
};

struct Comparison {
  SimResult result;
  std::vector<ComparisonLine> lines;

  std::string report() const;
};

/// Runs the config (at least two entries) and ranks entries at every grid point.
Comparison compare_schemes(const SimConfig& config);

/// True when a's interval lies entirely below b's.
bool significantly_below(const SimRow& a, const SimRow& b);

}  // namespace pcode
