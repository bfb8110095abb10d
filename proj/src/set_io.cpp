#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcode/multisymbol.hpp"

namespace pcode {

MultisymbolSet parse_set(std::istream& in) {
  MultisymbolSet set;
  std::vector<std::optional<Rational>> weights;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string token;
    Multisymbol m;
    std::optional<Rational> weight;
    while (fields >> token) {
      if (token.rfind("w=", 0) == 0) {
        weight = Rational::parse(std::string_view(token).substr(2));
        continue;
      }
      if (weight) throw std::invalid_argument("set file line " + std::to_string(line_no) + ": frame after weight");
      m.representatives.push_back(Frame::from_string(token));
    }
    const int f = m.frame_length();
    if (m.representatives.size() != static_cast<std::size_t>(f) + 1) {
      throw std::invalid_argument("set file line " + std::to_string(line_no) + ": expected " + std::to_string(f + 1) +
                                  " frames of length " + std::to_string(f));
    }
    if (set.frame_length == 0) set.frame_length = f;
    if (f != set.frame_length) {
      throw std::invalid_argument("set file line " + std::to_string(line_no) + ": frame length changes");
    }
    set.symbols.push_back(std::move(m));
    weights.push_back(weight);
  }
  if (set.symbols.empty()) throw std::invalid_argument("set file: no multisymbols");

  const bool any = std::any_of(weights.begin(), weights.end(), [](const auto& w) { return w.has_value(); });
  const bool all = std::all_of(weights.begin(), weights.end(), [](const auto& w) { return w.has_value(); });
  if (any && !all) throw std::invalid_argument("set file: weights must be given for every line or none");
  if (all) {
    for (const auto& w : weights) set.weights.push_back(*w);
  } else {
    set.weights.assign(set.symbols.size(), Rational(1, static_cast<std::int64_t>(set.symbols.size())));
  }
  return set;
}

MultisymbolSet read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open set file '" + path + "'");
  return parse_set(in);
}

void write_set(std::ostream& out, const MultisymbolSet& set) {
  const bool weighted = !set.is_uniform();
  out << "# F=" << set.frame_length << " L=" << set.size() << '\n';
  for (std::size_t t = 0; t < set.size(); ++t) {
    const auto& reps = set.symbols[t].representatives;
    for (std::size_t s = 0; s < reps.size(); ++s) out << (s ? " " : "") << reps[s].to_string();
    if (weighted) out << " w=" << set.weights[t].to_string();
    out << '\n';
  }
}

void write_set_file(const std::string& path, const MultisymbolSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write set file '" + path + "'");
  write_set(out, set);
}

MultisymbolSet load_set(const std::string& name_or_path) {
  const auto names = builtin_set_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin_set(name_or_path);
  if (std::filesystem::exists(name_or_path)) return read_set_file(name_or_path);
  throw std::domain_error("unknown set '" + name_or_path + "' (not a builtin name or a readable file)");
}

}  // namespace pcode
