#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "pcode/combinatorics.hpp"
#include "pcode/multisymbol.hpp"

using namespace pcode;

namespace {

Multisymbol ms(std::initializer_list<const char*> words) {
  Multisymbol m;
  for (const char* w : words) m.representatives.push_back(Frame::from_string(w));
  return m;
}

// All minimal F=4 multisymbols: one per permutation of packet positions.
std::vector<Multisymbol> all_minimal_f4() {
  std::vector<int> perm{0, 1, 2, 3};
  std::vector<Multisymbol> out;
  do {
    Multisymbol m;
    std::uint64_t bits = 0;
    m.representatives.push_back(Frame{0, 4});
    for (int p : perm) {
      bits |= 1ULL << p;
      m.representatives.push_back(Frame{bits, 4});
    }
    out.push_back(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Best achievable minimum distance (scaled by 16) over capacity-achieving
// multisets of 12 minimal F=4 symbols, by exhaustive branch and bound.
struct BestSetOracle {
  std::vector<Multisymbol> paths = all_minimal_f4();
  std::vector<std::vector<std::int64_t>> d;
  std::vector<int> use = std::vector<int>(16, 0);
  std::vector<int> chosen;
  std::int64_t best = -1;

  BestSetOracle() {
    d.assign(paths.size(), std::vector<std::int64_t>(paths.size()));
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = 0; j < paths.size(); ++j) d[i][j] = (expected_distance(paths[i], paths[j]) * 16).num();
    }
  }
  // Each weight-1 and weight-3 frame appears 3 times, each weight-2 frame twice.
  bool fits(const Multisymbol& m, int delta) {
    bool ok = true;
    for (int s = 1; s <= 3; ++s) {
      const auto x = m[s].bits;
      use[x] += delta;
      if (use[x] > (s == 2 ? 2 : 3)) ok = false;
    }
    return ok;
  }
  void dfs(std::size_t from, std::int64_t cur) {
    if (chosen.size() == 12) {
      best = std::max(best, cur);
      return;
    }
    for (std::size_t i = from; i < paths.size(); ++i) {
      std::int64_t next = cur;
      for (int c : chosen) next = std::min(next, d[static_cast<std::size_t>(c)][i]);
      if (next <= best) continue;
      if (fits(paths[i], 1)) {
        chosen.push_back(static_cast<int>(i));
        dfs(i, next);
        chosen.pop_back();
      }
      fits(paths[i], -1);
    }
  }
  Rational run() {
    dfs(0, 1000);
    return Rational(best, 16);
  }
};

}  // namespace

TEST_CASE("basic multisymbol") {
  CHECK(basic_multisymbol(4).to_string() == "(0000,0001,0011,0111,1111)");
  CHECK(basic_multisymbol(1).to_string() == "(0,1)");
  for (int f : {1, 2, 6, 17, 64}) {
    const auto m = basic_multisymbol(f);
    CHECK(m.is_minimal());
    CHECK(m.representatives.size() == static_cast<std::size_t>(f + 1));
  }
  CHECK(builtin_set("example1").symbols[0] == basic_multisymbol(4));
}

TEST_CASE("feasibility and minimality predicates") {
  CHECK(ms({"0000", "0001", "0011", "0111", "1111"}).is_minimal());
  CHECK_FALSE(ms({"0000", "0001", "0110", "0111", "1111"}).is_minimal());
  CHECK(ms({"0000", "0001", "0110", "0111", "1111"}).is_feasible());
  CHECK_FALSE(ms({"0000", "0011", "0011", "0111", "1111"}).is_feasible());
}

TEST_CASE("expected distance examples") {
  const auto e1 = builtin_set("example1");
  CHECK(expected_distance(e1.symbols[0], e1.symbols[3]) == Rational(1, 2));
  CHECK(expected_distance(e1.symbols[0], e1.symbols[11]) == Rational(5, 2));
  for (const auto& m : e1.symbols) CHECK(expected_distance(m, m) == Rational(0));
  CHECK_THROWS_AS(expected_distance(basic_multisymbol(4), basic_multisymbol(5)), std::domain_error);
}

TEST_CASE("builtin tables") {
  CHECK(builtin_set("example1").symbols[6].to_string() == "(0000,0100,0101,1101,1111)");
  CHECK(builtin_set("example2a").symbols[3].to_string() == "(0000,0010,0011,1011,1111)");
  const auto e3 = builtin_set("example3");
  CHECK(e3.symbols[0] == e3.symbols[1]);
  CHECK(e3.symbols[4] == e3.symbols[5]);
  CHECK(e3.symbols[9] == e3.symbols[10]);
  for (const auto& name : builtin_set_names()) {
    const auto set = builtin_set(name);
    CHECK(set.frame_length == 4);
    for (const auto& m : set.symbols) CHECK(m.is_minimal());
  }
  CHECK(builtin_set("example3w").size() == 8);
  CHECK_FALSE(builtin_set("example3w").is_uniform());
  CHECK_THROWS_AS(builtin_set("example4"), std::domain_error);
}

TEST_CASE("distance spectra of the builtin sets") {
  const auto s1 = distance_spectrum(builtin_set("example1"));
  const auto s2a = distance_spectrum(builtin_set("example2a"));
  const auto s2b = distance_spectrum(builtin_set("example2b"));
  CHECK(s1.min == Rational(1, 2));
  CHECK(s2a.min == Rational(1));
  CHECK(s2b.min == Rational(3, 4));
  for (const auto* s : {&s1, &s2a, &s2b}) {
    CHECK(s->max == Rational(5, 2));
    CHECK(s->pair_count == 66);
    CHECK(s->pairs.size() == 66);
    std::uint64_t mass = 0;
    for (auto [d, n] : s->histogram) mass += n;
    CHECK(mass == 66);
  }
  CHECK(s1.histogram.at(Rational(1, 2)) == 6);
  CHECK(min_expected_distance(builtin_set("example2b")) == Rational(3, 4));
}

TEST_CASE("expected distance is a pseudometric on the builtin sets") {
  for (const auto& name : builtin_set_names()) {
    const auto set = builtin_set(name);
    const std::size_t n = set.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Rational dab = expected_distance(set.symbols[a], set.symbols[b]);
        REQUIRE(dab == expected_distance(set.symbols[b], set.symbols[a]));
        REQUIRE(dab >= Rational(0));
        for (std::size_t c = 0; c < n; ++c) {
          REQUIRE(dab <= expected_distance(set.symbols[a], set.symbols[c]) +
                             expected_distance(set.symbols[c], set.symbols[b]));
        }
      }
    }
  }
}

TEST_CASE("F=4 maximum distance 5/2 needs complementary weight-2 representatives") {
  const auto paths = all_minimal_f4();
  REQUIRE(paths.size() == 24);
  int full_complements = 0;
  for (const auto& a : paths) {
    for (const auto& b : paths) {
      const Rational d = expected_distance(a, b);
      CHECK(d <= Rational(5, 2));
      CHECK((d == Rational(5, 2)) == (a[2].bits == (b[2].bits ^ 0xF)));
      const bool complement = a[1].bits == (b[3].bits ^ 0xF) && a[2].bits == (b[2].bits ^ 0xF) &&
                              a[3].bits == (b[1].bits ^ 0xF);
      if (complement) {
        ++full_complements;
        CHECK(d == Rational(5, 2));
      }
    }
  }
  CHECK(full_complements == 24);
}

TEST_CASE("validation of the example sets") {
  for (const char* name : {"example1", "example2a", "example2b", "example3w"}) {
    CAPTURE(name);
    CHECK(validate_set(builtin_set(name)).ok());
  }
  const auto px = induced_frame_distribution(builtin_set("example3w"));
  for (const auto& p : px) CHECK(p == Rational(1, 16));

  // The 12-row table puts 1101 in four rows and 1011 in two.
  const auto report = validate_set(builtin_set("example3"));
  const auto* marginal = report.find("marginal");
  REQUIRE(marginal != nullptr);
  CHECK_FALSE(marginal->passed);
  REQUIRE(marginal->offending.size() == 2);
  CHECK(marginal->offending[0].rfind("1011", 0) == 0);
  CHECK(marginal->offending[1].rfind("1101", 0) == 0);
  CHECK(report.find("minimality")->passed);
}

TEST_CASE("validation negative cases") {
  auto set = builtin_set("example2a");
  set.symbols[5].representatives[2] = Frame::from_string("0111");
  const auto report = validate_set(set);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.find("feasibility")->passed);
  CHECK(report.find("feasibility")->offending.size() == 1);

  auto skewed = builtin_set("example2a");
  skewed.weights[0] = Rational(1, 6);
  CHECK_FALSE(validate_set(skewed).find("weight normalization")->passed);

  auto jumpy = builtin_set("example1");
  jumpy.symbols[0] = ms({"0000", "0001", "0110", "0111", "1111"});
  const auto r2 = validate_set(jumpy);
  CHECK(r2.find("feasibility")->passed);
  CHECK_FALSE(r2.find("minimality")->passed);
  CHECK_FALSE(r2.find("marginal")->passed);
}

TEST_CASE("construct_set small frames") {
  const auto f1 = construct_set(1, {});
  REQUIRE(f1.size() == 1);
  CHECK(f1.symbols[0].to_string() == "(0,1)");

  const auto f2 = construct_set(2, {});
  REQUIRE(f2.size() == 2);
  std::set<std::string> got{f2.symbols[0].to_string(), f2.symbols[1].to_string()};
  CHECK(got == std::set<std::string>{"(00,01,11)", "(00,10,11)"});
  CHECK(min_expected_distance(f2) == Rational(1));
}

TEST_CASE("construct_set F=4 against the exhaustive optimum") {
  const Rational optimum = BestSetOracle().run();
  CHECK(optimum >= Rational(3, 4));
  for (auto strategy : {ConstructionStrategy::greedy_edge_disjoint, ConstructionStrategy::randomized_restart}) {
    ConstructionOptions opts;
    opts.strategy = strategy;
    const auto set = construct_set(4, opts);
    CHECK(set.size() == 12);
    CHECK(validate_set(set).ok());
    const Rational m = min_expected_distance(set);
    CHECK(m >= Rational(3, 4));
    CHECK(m <= optimum);
    std::set<std::string> distinct;
    for (const auto& s : set.symbols) distinct.insert(s.to_string());
    CHECK(distinct.size() == 12);
    CHECK(max_edge_load(set) == std::vector<int>{3, 1, 1, 3});
  }
}

TEST_CASE("construct_set is deterministic and valid up to F=6") {
  for (int f = 3; f <= 6; ++f) {
    ConstructionOptions opts;
    opts.seed = 11;
    opts.restarts = 4;
    const auto a = construct_set(f, opts);
    const auto b = construct_set(f, opts);
    CHECK(a.symbols == b.symbols);
    CHECK(a.size() == static_cast<std::size_t>(lcm_binomials(FrameParams(f))));
    CHECK(validate_set(a).ok());
  }
  CHECK_THROWS(construct_set(13, {}));
}

TEST_CASE("edge loads") {
  // Example 1 shares edges on purpose; Example 2a avoids it.
  const auto e1 = max_edge_load(builtin_set("example1"));
  const auto e2 = max_edge_load(builtin_set("example2a"));
  REQUIRE(e2.size() == 4);
  CHECK(*std::max_element(e1.begin(), e1.end()) > 1);
  CHECK(e2 == std::vector<int>{3, 1, 1, 3});
}

TEST_CASE("errorless capacity") {
  CHECK(errorless_capacity(4) == doctest::Approx(1.0 + 6.0 / 16.0 * std::log2(6.0)).epsilon(1e-12));
  CHECK(errorless_capacity(1) == 0.0);
  CHECK(errorless_capacity(2) == doctest::Approx(0.5));
}

TEST_CASE("set text round trip") {
  for (const auto& name : builtin_set_names()) {
    const auto set = builtin_set(name);
    std::stringstream ss;
    write_set(ss, set);
    const auto back = parse_set(ss);
    CHECK(back.frame_length == set.frame_length);
    CHECK(back.symbols == set.symbols);
    CHECK(back.weights == set.weights);
  }
  std::stringstream bad("0000 0001 0011\n");
  CHECK_THROWS_AS(parse_set(bad), std::invalid_argument);
  std::stringstream mixed("0 1 w=1/2\n1 1\n");
  CHECK_THROWS_AS(parse_set(mixed), std::invalid_argument);

  const std::string path = "test_multisymbol_roundtrip.txt";
  write_set_file(path, builtin_set("example3w"));
  CHECK(load_set(path).weights == builtin_set("example3w").weights);
  std::remove(path.c_str());
  CHECK(load_set("example2b").symbols == builtin_set("example2b").symbols);
}
