#include "pcode/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

namespace pcode {

std::string to_string(SchemeKind kind) { return kind == SchemeKind::naive ? "naive" : "trellis"; }

SchemeKind parse_scheme_kind(std::string_view name) {
  if (name == "naive") return SchemeKind::naive;
  if (name == "trellis") return SchemeKind::trellis;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected naive or trellis)");
}

void SimConfig::validate() const {
  if (frame_length < 1 || frame_length > 12) throw std::invalid_argument("config: F must be in [1, 12]");
  if (entries.empty()) throw std::invalid_argument("config: no scheme entries");
  if (p_grid.empty()) throw std::invalid_argument("config: empty p grid");
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("config: p outside [0, 1]");
  }
  if (packet_lengths.empty()) throw std::invalid_argument("config: no packet lengths");
  if (iterations < 1) throw std::invalid_argument("config: iterations must be >= 1");
  if (interleaver_rows < 1) throw std::invalid_argument("config: lambda must be >= 1");
  const bool has_naive = std::any_of(entries.begin(), entries.end(),
                                     [](const SchemeEntry& e) { return e.scheme == SchemeKind::naive; });
  for (int n : packet_lengths) {
    if (n < 1) throw std::invalid_argument("config: packet length must be >= 1");
    const auto coded = ConvCode::coded_length(static_cast<std::size_t>(n));
    if (coded % interleaver_rows != 0) {
      throw std::invalid_argument("config: 2(N+2) = " + std::to_string(coded) + " not divisible by lambda = " +
                                  std::to_string(interleaver_rows));
    }
    if (has_naive && coded % static_cast<std::size_t>(frame_length) != 0) {
      throw std::invalid_argument("config: naive scheme needs 2(N+2) divisible by F for N = " + std::to_string(n));
    }
  }
}

SimConfig parse_sim_config(std::istream& in) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  SimConfig c;
  try {
    if (j.contains("F")) c.frame_length = j.at("F").get<int>();
    if (j.contains("entries")) {
      c.entries.clear();
      for (const auto& e : j.at("entries")) {
        SchemeEntry entry;
        entry.scheme = parse_scheme_kind(e.at("scheme").get<std::string>());
        entry.set = entry.scheme == SchemeKind::naive ? "-" : e.value("set", std::string("example2a"));
        entry.trellis_seed = e.value("trellis_seed", std::uint64_t{0});
        c.entries.push_back(entry);
      }
    }
    if (j.contains("channel")) c.channel = parse_channel_kind(j.at("channel").get<std::string>());
    if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
    if (j.contains("N")) c.packet_lengths = j.at("N").get<std::vector<int>>();
    if (j.contains("iterations")) c.iterations = j.at("iterations").get<int>();
    if (j.contains("lambda")) c.interleaver_rows = j.at("lambda").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    if (j.contains("state_knowledge")) {
      const auto k = j.at("state_knowledge").get<std::string>();
      if (k == "known") c.knowledge = StateKnowledge::known;
      else if (k == "unknown") c.knowledge = StateKnowledge::unknown;
      else throw std::invalid_argument("config: state_knowledge must be known or unknown");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

SimConfig read_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  return parse_sim_config(in);
}

const SimRow* SimResult::find(std::string_view scheme, std::string_view set, int packet_length, double p) const {
  for (const auto& r : rows) {
    if (r.scheme == scheme && r.set == set && r.packet_length == packet_length && r.p == p) return &r;
  }
  return nullptr;
}

Interval95 wilson_interval(long errors, long trials) {
  if (trials <= 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(errors) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (phat + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains the point estimate despite rounding.
  return {std::clamp(std::min(centre - half, phat), 0.0, 1.0), std::clamp(std::max(centre + half, phat), 0.0, 1.0)};
}

namespace {

using Codec = std::variant<NaiveCodec, TrellisScheme>;

std::vector<Codec> build_codecs(const SimConfig& config) {
  std::vector<Codec> codecs;
  for (const auto& e : config.entries) {
    if (e.scheme == SchemeKind::naive) {
      codecs.emplace_back(NaiveCodec(config.frame_length, config.interleaver_rows));
      continue;
    }
    MultisymbolSet set = load_set(e.set);
    if (set.frame_length != config.frame_length) {
      throw std::invalid_argument("config: set '" + e.set + "' has F=" + std::to_string(set.frame_length) +
                                  ", config has F=" + std::to_string(config.frame_length));
    }
    codecs.emplace_back(TrellisScheme(build_trellis(set, e.trellis_seed), config.interleaver_rows, config.knowledge));
  }
  return codecs;
}

// errors[entry * grid + p_index] for one block of iterations.
void run_block(const SimConfig& config, const std::vector<Codec>& codecs, int n, int first, int last,
               std::vector<long>& errors) {
  const StateProcess process(config.frame_length);
  const std::size_t grid = config.p_grid.size();
  const auto key = static_cast<std::uint64_t>(n);
  std::vector<ReceivedFrame> received;
  for (int it = first; it < last; ++it) {
    const auto iter = static_cast<std::uint64_t>(it);
    Rng info_rng = make_stream(config.seed, key, iter, StreamRole::info);
    Bits info(static_cast<std::size_t>(n));
    for (auto& b : info) b = info_rng.bit();
    Rng state_rng = make_stream(config.seed, key, iter, StreamRole::states);
    const std::vector<int> states = draw_states(process, ConvCode::coded_length(info.size()), state_rng);

    for (std::size_t e = 0; e < codecs.size(); ++e) {
      std::vector<Frame> frames;
      std::span<const int> used_states;
      if (const auto* naive = std::get_if<NaiveCodec>(&codecs[e])) {
        Rng proj_rng = make_stream(config.seed, key, iter, StreamRole::projection);
        used_states = std::span<const int>(states).first(naive->frames_for(info.size()));
        frames = naive->encode(info, used_states, proj_rng);
      } else {
        used_states = states;
        frames = std::get<TrellisScheme>(codecs[e]).encode(info, used_states);
      }
      for (std::size_t k = 0; k < grid; ++k) {
        const ChannelModel model(config.channel, config.p_grid[k]);
        Rng channel_rng = make_stream(config.seed, key, iter, StreamRole::channel);
        received.clear();
        for (const Frame& f : frames) received.push_back(transmit(f, model, channel_rng));
        Bits decoded;
        if (const auto* naive = std::get_if<NaiveCodec>(&codecs[e])) {
          decoded = naive->decode(received);
        } else {
          decoded = std::get<TrellisScheme>(codecs[e]).decode(received, used_states);
        }
        if (decoded != info) ++errors[e * grid + k];
      }
    }
  }
}

}  // namespace

SimResult run_simulation(const SimConfig& config) {
  config.validate();
  const std::vector<Codec> codecs = build_codecs(config);
  const std::size_t grid = config.p_grid.size();
  unsigned workers = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  constexpr int kChunk = 250;

  SimResult result;
  for (int n : config.packet_lengths) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<long> totals(codecs.size() * grid, 0);
    const int chunks = (config.iterations + kChunk - 1) / kChunk;
    std::atomic<int> next_chunk{0};
    std::mutex merge;
    auto work = [&] {
      std::vector<long> local(totals.size(), 0);
      for (int c = next_chunk++; c < chunks; c = next_chunk++) {
        run_block(config, codecs, n, c * kChunk, std::min(config.iterations, (c + 1) * kChunk), local);
      }
      const std::lock_guard lock(merge);
      for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += local[i];
    };
    const unsigned used = std::min<unsigned>(workers, static_cast<unsigned>(chunks));
    if (used <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < used; ++w) pool.emplace_back(work);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (std::size_t e = 0; e < codecs.size(); ++e) {
      for (std::size_t k = 0; k < grid; ++k) {
        SimRow row;
        row.scheme = to_string(config.entries[e].scheme);
        row.set = config.entries[e].set_label();
        row.packet_length = n;
        row.p = config.p_grid[k];
        row.iterations = config.iterations;
        row.errors = totals[e * grid + k];
        row.per = static_cast<double>(row.errors) / config.iterations;
        const auto ci = wilson_interval(row.errors, config.iterations);
        row.ci_lo = ci.lo;
        row.ci_hi = ci.hi;
        row.seed = config.seed;
        row.wall_seconds = elapsed;
        result.rows.push_back(row);
      }
    }
  }
  return result;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

constexpr std::string_view kCsvHeader = "scheme,set,N,p,iterations,errors,per,ci_lo,ci_hi,seed";

}  // namespace

void write_csv(std::ostream& out, const SimResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << r.scheme << ',' << r.set << ',' << r.packet_length << ',' << format_double(r.p) << ',' << r.iterations
        << ',' << r.errors << ',' << format_double(r.per) << ',' << format_double(r.ci_lo) << ','
        << format_double(r.ci_hi) << ',' << r.seed << '\n';
  }
}

std::string to_csv(const SimResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

SimResult parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("csv: missing or unexpected header");
  SimResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw std::invalid_argument("csv: expected 10 columns in '" + line + "'");
    SimRow r;
    r.scheme = f[0];
    r.set = f[1];
    r.packet_length = std::stoi(f[2]);
    r.p = parse_double(f[3]);
    r.iterations = std::stoi(f[4]);
    r.errors = std::stol(f[5]);
    r.per = parse_double(f[6]);
    r.ci_lo = parse_double(f[7]);
    r.ci_hi = parse_double(f[8]);
    r.seed = std::stoull(f[9]);
    result.rows.push_back(r);
  }
  return result;
}

std::string plot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "import csv\nfrom collections import defaultdict\nimport matplotlib\nmatplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n\n"
     << "rows = list(csv.DictReader(open(" << nlohmann::json(csv_path).dump() << ")))\n"
     << "curves = defaultdict(list)\n"
        "for r in rows:\n"
        "    curves[(r['scheme'], r['set'], int(r['N']))].append((float(r['p']), float(r['per']),\n"
        "                                                        float(r['ci_lo']), float(r['ci_hi'])))\n"
        "fig, ax = plt.subplots()\n"
        "for (scheme, name, n), pts in sorted(curves.items()):\n"
        "    pts.sort()\n"
        "    p = [x[0] for x in pts]; per = [max(x[1], 1e-5) for x in pts]\n"
        "    err = [[x[1] - x[2] for x in pts], [x[3] - x[1] for x in pts]]\n"
        "    label = scheme if scheme == 'naive' else f'{scheme}/{name}'\n"
        "    ax.errorbar(p, per, yerr=err, marker='o', capsize=2, label=f'{label} N={n}')\n"
        "ax.set_yscale('log'); ax.set_xlabel('erasure probability'); ax.set_ylabel('PER')\n"
        "ax.grid(True, which='both', alpha=0.3); ax.legend()\n"
     << "fig.savefig(" << nlohmann::json(csv_path + ".png").dump() << ", dpi=150)\n";
  return os.str();
}

bool significantly_below(const SimRow& a, const SimRow& b) { return a.ci_hi < b.ci_lo; }

Comparison compare_schemes(const SimConfig& config) {
  if (config.entries.size() < 2) throw std::invalid_argument("compare: need at least two scheme entries");
  Comparison cmp;
  cmp.result = run_simulation(config);
  const auto& rows = cmp.result.rows;
  for (int n : config.packet_lengths) {
    for (double p : config.p_grid) {
      ComparisonLine line;
      line.packet_length = n;
      line.p = p;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].packet_length == n && rows[i].p == p) line.ranking.push_back(i);
      }
      std::stable_sort(line.ranking.begin(), line.ranking.end(),
                       [&](std::size_t a, std::size_t b) { return rows[a].per < rows[b].per; });
      for (std::size_t k = 0; k + 1 < line.ranking.size(); ++k) {
        line.significant.push_back(significantly_below(rows[line.ranking[k]], rows[line.ranking[k + 1]]));
      }
      cmp.lines.push_back(std::move(line));
    }
  }
  return cmp;
}

std::string Comparison::report() const {
  std::ostringstream os;
  for (const auto& line : lines) {
    os << "N=" << line.packet_length << " p=" << format_double(line.p) << ":";
    for (std::size_t k = 0; k < line.ranking.size(); ++k) {
      const SimRow& r = result.rows[line.ranking[k]];
      os << ' ' << r.scheme << (r.scheme == "naive" ? "" : "/" + r.set) << " PER=" << format_double(r.per) << " ["
         << format_double(r.ci_lo) << ", " << format_double(r.ci_hi) << "]";
      if (k < line.significant.size()) os << (line.significant[k] ? " <" : " ~");
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace pcode
