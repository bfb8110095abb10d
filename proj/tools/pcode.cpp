// Command-line front end for the protocol-coding library.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcode/combinatorics.hpp"
#include "pcode/multisymbol.hpp"
#include "pcode/secondary_codec.hpp"
#include "pcode/simulation.hpp"
#include "pcode/variable_radix.hpp"
#include "pcode/wimax.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// "0x1f..." as hex (4 bits per digit), otherwise a 0/1 string.
pcode::Bits parse_message(const std::string& text) {
  pcode::Bits bits;
  if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
    for (char c : text.substr(2)) {
      int v = 0;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw std::invalid_argument("bad hex digit in message");
      for (int b = 3; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
    }
    return bits;
  }
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("message must be a bit string or 0x-prefixed hex");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

void print_spectrum(const pcode::MultisymbolSet& set, bool list_pairs) {
  const auto spec = pcode::distance_spectrum(set);
  std::cout << "F " << set.frame_length << "\nsymbols " << set.size() << "\n";
  std::cout << "min_distance " << spec.min << " (" << spec.min.to_double() << ")\n";
  std::cout << "max_distance " << spec.max << " (" << spec.max.to_double() << ")\n";
  std::cout << "histogram";
  for (const auto& [d, n] : spec.histogram) std::cout << ' ' << d << ':' << n;
  std::cout << '\n';
  if (list_pairs) {
    for (const auto& p : spec.pairs) std::cout << "pair " << p.first + 1 << ' ' << p.second + 1 << ' ' << p.distance << '\n';
  }
  const auto report = pcode::validate_set(set);
  for (const auto& c : report.checks) {
    std::cout << "check " << std::quoted(c.name) << ' ' << (c.passed ? "pass" : "FAIL");
    for (const auto& o : c.offending) std::cout << "\n  " << o;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protocol coding: secondary bits in the ordering of labelled packets"};
  app.require_subcommand(1);

  int cap_f = 4;
  auto* capacity = app.add_subcommand("capacity", "State distribution, L and errorless capacity for frame length F");
  capacity->add_option("--F", cap_f, "Frame length")->required();

  int cs_f = 4;
  std::uint64_t cs_seed = 0;
  std::string cs_out;
  std::string cs_strategy = "randomized_restart";
  int cs_restarts = 0;
  auto* construct = app.add_subcommand("construct-set", "Build a capacity-achieving multisymbol set");
  construct->add_option("--F", cs_f, "Frame length (<= 12)")->required();
  construct->add_option("--seed", cs_seed, "Seed for randomized restarts");
  construct->add_option("--out", cs_out, "Output set file (stdout if omitted)");
  construct->add_option("--strategy", cs_strategy, "greedy_edge_disjoint | randomized_restart");
  construct->add_option("--restarts", cs_restarts, "Number of restarts (0 = default)");

  std::string sp_set;
  bool sp_pairs = false;
  auto* spectrum = app.add_subcommand("spectrum", "Expected-distance spectrum and validation of a set");
  spectrum->add_option("--set", sp_set, "Builtin set name or set file")->required();
  spectrum->add_flag("--pairs", sp_pairs, "List every pair distance");

  std::string tr_set;
  std::uint64_t tr_seed = 0;
  auto* trellis = app.add_subcommand("trellis", "Label the inner trellis with a multisymbol set (6 states for 12 symbols)");
  trellis->add_option("--set", tr_set, "Builtin set name or set file")->required();
  trellis->add_option("--seed", tr_seed, "Tie-break seed");

  int vr_m = 10;
  int vr_f = 4;
  std::string vr_states;
  std::string vr_message;
  bool vr_pack = false;
  auto* encode_vr = app.add_subcommand("encode-vr", "Variable-radix encoding over an errorless channel");
  encode_vr->add_option("--m", vr_m, "Bits per input symbol")->required();
  encode_vr->add_option("--F", vr_f, "Frame length");
  encode_vr->add_option("--states", vr_states, "Comma-separated frame states")->required();
  encode_vr->add_option("--message", vr_message, "Bit string, or hex with 0x prefix")->required();
  encode_vr->add_flag("--pack", vr_pack, "Carry surplus combinations into the next symbol");

  std::string dv_frames;
  auto* decode_vr = app.add_subcommand("decode-vr", "Variable-radix decoding");
  decode_vr->add_option("--m", vr_m, "Bits per input symbol")->required();
  decode_vr->add_option("--states", vr_states, "Comma-separated frame states")->required();
  decode_vr->add_option("--frames", dv_frames, "Comma-separated binary frames")->required();
  decode_vr->add_flag("--pack", vr_pack, "Carry surplus combinations into the next symbol");

  std::string sim_config;
  std::string sim_out;
  std::string sim_plot;
  unsigned sim_threads = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo packet error rate");
  simulate->add_option("--config", sim_config, "JSON experiment description")->required();
  simulate->add_option("--out", sim_out, "Results CSV (stdout if omitted)");
  simulate->add_option("--plot-script", sim_plot, "Also write a matplotlib script for the CSV");
  simulate->add_option("--threads", sim_threads, "Worker threads (overrides config)");

  auto* compare = app.add_subcommand("compare", "Rank schemes/sets at every grid point");
  compare->add_option("--config", sim_config, "JSON experiment description")->required();
  compare->add_option("--out", sim_out, "Also write the results CSV");
  compare->add_option("--threads", sim_threads, "Worker threads (overrides config)");

  std::string wx_slots;
  double wx_frame_ms = 5.0;
  double wx_rep = 6.0;
  double wx_slope = 36.0;
  auto* wimax = app.add_subcommand("wimax", "Secondary rate and range of slot reordering");
  wimax->add_option("--slots", wx_slots, "Comma-separated slots per station")->required();
  wimax->add_option("--frame-ms", wx_frame_ms, "Frame duration in ms");
  wimax->add_option("--rep", wx_rep, "Repetition factor of the secondary header");
  wimax->add_option("--slope", wx_slope, "Path-loss slope, dB per decade of distance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*capacity) {
      const pcode::FrameParams params(cap_f);
      const auto ps = pcode::state_distribution_exact(params);
      std::cout << "F " << cap_f << "\nL " << pcode::to_string(pcode::lcm_binomials(params)) << "\nP_S";
      for (const auto& p : ps) std::cout << ' ' << p;
      std::cout << std::setprecision(12) << "\ncapacity_bits_per_frame " << pcode::errorless_capacity(cap_f) << '\n';
    } else if (*construct) {
      pcode::ConstructionOptions opts;
      opts.strategy = pcode::parse_strategy(cs_strategy);
      opts.seed = cs_seed;
      opts.restarts = cs_restarts;
      const auto set = pcode::construct_set(cs_f, opts);
      if (cs_out.empty()) {
        pcode::write_set(std::cout, set);
      } else {
        pcode::write_set_file(cs_out, set);
      }
      const auto spec = pcode::distance_spectrum(set);
      std::cerr << "L=" << set.size() << " min_distance=" << spec.min << " max_distance=" << spec.max << '\n';
    } else if (*spectrum) {
      print_spectrum(pcode::load_set(sp_set), sp_pairs);
    } else if (*trellis) {
      const auto code = pcode::build_trellis(pcode::load_set(tr_set), tr_seed);
      for (int a = 0; a < code.num_states(); ++a) {
        for (int b = 0; b < 2; ++b) {
          std::cout << "state " << a << " bit " << b << " -> " << code.next(a, b) << " t=" << code.label(a, b) + 1
                    << ' ' << code.branch_symbol(a, b).to_string() << '\n';
        }
      }
      std::cout << "out_separation " << code.out_separation() << "\nin_separation " << code.in_separation() << '\n';
      const auto events = pcode::event_distances(code);
      std::cout << "error_events";
      int shown = 0;
      for (std::size_t i = 0; i < events.size() && shown < 6; ++shown) {
        std::size_t j = i;
        while (j < events.size() && events[j] == events[i]) ++j;
        std::cout << ' ' << events[i] << ':' << j - i;
        i = j;
      }
      std::cout << '\n';
      if (!code.warning.empty()) std::cerr << "warning: " << code.warning << '\n';
    } else if (*encode_vr) {
      pcode::VariableRadixOptions opts;
      opts.pack_leftover = vr_pack;
      const auto frames = pcode::vr_encode(parse_message(vr_message), vr_m, vr_f, parse_int_list(vr_states), opts);
      for (const auto& f : frames) std::cout << f.to_string() << '\n';
    } else if (*decode_vr) {
      pcode::VariableRadixOptions opts;
      opts.pack_leftover = vr_pack;
      std::vector<pcode::Frame> frames;
      std::stringstream ss(dv_frames);
      std::string word;
      while (std::getline(ss, word, ',')) frames.push_back(pcode::Frame::from_string(word));
      const auto bits = pcode::vr_decode(frames, vr_m, parse_int_list(vr_states), opts);
      for (auto b : bits) std::cout << static_cast<int>(b);
      std::cout << '\n';
    } else if (*simulate || *compare) {
      auto config = pcode::read_sim_config(sim_config);
      if (sim_threads != 0) config.threads = sim_threads;
      pcode::SimResult result;
      if (*compare) {
        const auto cmp = pcode::compare_schemes(config);
        std::cout << cmp.report();
        result = cmp.result;
      } else {
        result = pcode::run_simulation(config);
      }
      if (!sim_out.empty()) {
        std::ofstream out(sim_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + sim_out + "'");
        pcode::write_csv(out, result);
      } else if (*simulate) {
        pcode::write_csv(std::cout, result);
      }
      if (!sim_plot.empty()) {
        std::ofstream script(sim_plot);
        script << pcode::plot_script(sim_out.empty() ? "results.csv" : sim_out);
      }
    } else if (*wimax) {
      const auto slots = parse_int_list(wx_slots);
      std::cout << pcode::wimax_case_study(slots, wx_frame_ms, wx_rep, wx_slope).to_string();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
