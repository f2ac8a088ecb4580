#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "qrg/bounds.hpp"
#include "qrg/group.hpp"
#include "qrg/rng.hpp"
#include "qrg/setfun.hpp"
#include "qrg/subset.hpp"
#include "support.hpp"

using namespace qrg;

namespace {

Subset of(Index n, std::initializer_list<Index> elems) {
  Subset s(n);
  for (Index e : elems) s.set(e);
  return s;
}

const Clause& clause(const BoundReport& r, const std::string& id) {
  for (const Clause& c : r.clauses)
    if (c.id == id) return c;
  REQUIRE(false);
  return r.clauses.front();
}

}  // namespace

TEST_CASE("dimension bound helpers") {
  KValue f = k_from_formula(make_group("psl2:13"));
  CHECK(f.value == 6.0);
  CHECK(f.source == KSource::formula);
  CHECK(k_from_formula(make_group("psl2:7")).value == 3.0);
  CHECK(oracle::error_code_of([] { k_from_formula(make_group("sym:4")); }) == "bad-input");

  KValue t = k_from_table(make_group("cyclic:6"));
  CHECK(t.value == 1.0);
  CHECK(t.source == KSource::computed);
  CHECK(k_from_table(make_group("alt:5")).value == 3.0);

  KValue s = k_supplied(2.5);
  CHECK(s.value == 2.5);
  CHECK(s.source == KSource::supplied);
  CHECK(oracle::error_code_of([] { k_supplied(0.5); }) == "bad-input");

  CHECK(k_source_name(KSource::computed) == "computed");
  CHECK(k_source_name(KSource::formula) == "formula");
  CHECK(k_source_name(KSource::supplied) == "supplied");
}

TEST_CASE("triple clauses switch on at the right sizes") {
  FiniteGroup g = make_group("cyclic:6");
  Subset full = Subset::full(6);

  // product * k equal to n^3 leaves the positivity clause off
  BoundReport at_margin = verify_triple_bound(g, full, full, full, k_supplied(1.0));
  CHECK_FALSE(clause(at_margin, "triple-positivity").applicable);
  CHECK_FALSE(clause(at_margin, "triple-count").applicable);
  CHECK(clause(at_margin, "triple-deviation").applicable);
  CHECK(clause(at_margin, "triple-deviation").pass);
  CHECK(at_margin.pass);

  BoundReport above = verify_triple_bound(g, full, full, full, k_supplied(2.0));
  CHECK(clause(above, "triple-positivity").applicable);
  CHECK(clause(above, "triple-positivity").pass);
  CHECK(clause(above, "triple-positivity").observed == 36.0);

  // eta 1 with k = n turns the count clause on with a zero floor
  BoundReport counted = verify_triple_bound(g, full, full, full, k_supplied(6.0), 1.0);
  const Clause& cc = clause(counted, "triple-count");
  CHECK(cc.applicable);
  CHECK(cc.bound == 0.0);
  CHECK(cc.pass);

  BoundReport halfeta = verify_triple_bound(g, full, full, full, k_supplied(8.0), 0.5);
  const Clause& hc = clause(halfeta, "triple-count");
  CHECK(hc.applicable);
  CHECK(hc.bound == doctest::Approx(18.0));
  CHECK(hc.observed == 36.0);
  CHECK(hc.pass);

  Subset empty(6);
  BoundReport vacuous = verify_triple_bound(g, empty, full, full, k_supplied(1.0));
  CHECK(clause(vacuous, "triple-deviation").bound == 0.0);
  CHECK(clause(vacuous, "triple-deviation").observed == 0.0);
  CHECK(vacuous.pass);
}

TEST_CASE("triple report wiring against direct enumeration") {
  std::uint64_t seed = 4000;
  for (const char* desc : {"cyclic:24", "dihedral:10", "sym:4", "alt:4"}) {
    FiniteGroup g = make_group(desc);
    Index n = g.order();
    SplitMix64 rng(seed++);
    for (int trial = 0; trial < 3; ++trial) {
      Subset a = random_subset(n, 0.3 + 0.2 * trial, rng);
      Subset b = random_subset(n, 0.5, rng);
      Subset c = random_subset(n, 0.6, rng);
      BoundReport r = verify_triple_bound(g, a, b, c, k_supplied(1.0));
      double product = static_cast<double>(a.size()) * b.size() * c.size();
      double expected = product / n;
      double observed = std::abs(oracle::triples(g, a, b, c) - expected);
      CHECK(clause(r, "triple-deviation").observed == doctest::Approx(observed).scale(1.0));
      CHECK(clause(r, "triple-deviation").bound ==
            doctest::Approx(std::sqrt(product * n)).scale(1.0));
      CHECK(r.statement == "triple-deviation");
      CHECK(r.group == desc);
      CHECK(r.inputs.find("(supplied)") != std::string::npos);
      CHECK(r.runtime_seconds >= 0.0);
    }
  }
}

TEST_CASE("deviation bound holds on a highly quasirandom group") {
  FiniteGroup g = make_group("psl2:13");
  KValue k = k_from_formula(g);
  SplitMix64 rng(777);
  for (int trial = 0; trial < 3; ++trial) {
    Subset a = random_subset(g.order(), 0.5 + 0.1 * trial, rng);
    Subset b = random_subset(g.order(), 0.7, rng);
    Subset c = random_subset(g.order(), 0.9, rng);
    BoundReport r = verify_triple_bound(g, a, b, c, k);
    CHECK(r.pass);
    CHECK(clause(r, "triple-deviation").pass);
    CHECK(r.inputs.find("k=6(formula)") != std::string::npos);
  }
}

TEST_CASE("a too optimistic dimension bound fails honestly") {
  FiniteGroup g = make_group("cyclic:12");
  Subset a = of(12, {0, 1});
  BoundReport r = verify_triple_bound(g, a, a, a, k_supplied(100.0));
  const Clause& dev = clause(r, "triple-deviation");
  CHECK(dev.applicable);
  CHECK_FALSE(dev.pass);
  CHECK_FALSE(r.pass);
  CHECK(dev.observed == doctest::Approx(3.0 - 8.0 / 12.0));
  CHECK(dev.bound == doctest::Approx(std::sqrt(8.0 * 12.0 / 100.0)));
}

TEST_CASE("triple bound input validation") {
  FiniteGroup g = make_group("cyclic:6");
  Subset full = Subset::full(6);
  CHECK(oracle::error_code_of([&] {
          verify_triple_bound(g, full, full, full, k_supplied(1.0), 0.0);
        }) == "bad-input");
  CHECK(oracle::error_code_of([&] {
          verify_triple_bound(g, full, full, full, k_supplied(1.0), 1.5);
        }) == "bad-input");
  CHECK(oracle::error_code_of([&] {
          verify_triple_bound(g, full, full, full, KValue{0.25, KSource::supplied});
        }) == "bad-input");
  Subset wrong(5);
  CHECK(oracle::error_code_of([&] {
          verify_triple_bound(g, wrong, full, full, k_supplied(1.0));
        }) == "bad-input");
}

TEST_CASE("deficient translate sets match a direct scan") {
  std::uint64_t seed = 5100;
  for (const char* desc : {"cyclic:20", "sym:4", "psl2:5"}) {
    FiniteGroup g = make_group(desc);
    Index n = g.order();
    SplitMix64 rng(seed++);
    for (int trial = 0; trial < 3; ++trial) {
      Subset a = random_subset(n, 0.4 + 0.15 * trial, rng);
      Subset b = random_subset(n, 0.5, rng);
      double delta = 0.05 + 0.25 * rng.uniform();
      TranslateReport tr = deficient_translates(g, a, b, delta, k_from_table(g));

      double threshold = (1.0 - delta) * static_cast<double>(a.size()) * b.size() / n;
      Subset brute(n);
      for (Index x = 0; x < n; ++x)
        if (static_cast<double>(translate_intersection(g, a, b, x)) <= threshold) brute.set(x);
      CHECK(tr.deficient == brute);

      const Clause& c = clause(tr.report, "translate-deficit");
      CHECK(c.applicable == (a.size() > 0 && b.size() > 0));
      CHECK(c.observed == static_cast<double>(tr.deficient.size()));
      CHECK(tr.report.inputs.find("t=") != std::string::npos);
    }
  }
}

TEST_CASE("translate deficit guarantee on a quasirandom group") {
  FiniteGroup g = make_group("psl2:7");
  KValue k = k_from_formula(g);
  SplitMix64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    Subset a = random_subset(g.order(), 0.5, rng);
    Subset b = random_subset(g.order(), 0.6, rng);
    TranslateReport tr = deficient_translates(g, a, b, 0.3, k);
    CHECK(tr.report.pass);
    double t = 168.0 * 168.0 /
               (0.3 * 0.3 * static_cast<double>(a.size()) * b.size() * 3.0);
    CHECK(clause(tr.report, "translate-deficit").bound == doctest::Approx(t * 168.0));
  }
}

TEST_CASE("translate report edge cases") {
  FiniteGroup g = make_group("cyclic:10");
  Subset a = of(10, {0, 1, 2});
  Subset empty(10);

  TranslateReport tr = deficient_translates(g, a, empty, 0.5, k_supplied(1.0));
  CHECK_FALSE(clause(tr.report, "translate-deficit").applicable);
  CHECK(tr.report.pass);
  CHECK(tr.deficient.size() == 10);  // every intersection is zero

  CHECK(oracle::error_code_of([&] {
          deficient_translates(g, a, a, 0.0, k_supplied(1.0));
        }) == "bad-input");
  CHECK(oracle::error_code_of([&] {
          deficient_translates(g, a, a, 1.5, k_supplied(1.0));
        }) == "bad-input");

  // delta 1 keeps only translates that miss A entirely
  TranslateReport all = deficient_translates(g, Subset::full(10), Subset::full(10), 1.0,
                                             k_supplied(1.0));
  CHECK(all.deficient.empty());
}

TEST_CASE("cross metric sweep") {
  FiniteGroup g = make_group("psl2:7");
  BoundReport r = equivalence_report(g, 20, 11, k_from_formula(g));
  CHECK(r.statement == "cross-metric");
  CHECK(r.pass);
  const Clause& cycles = clause(r, "four-cycle-excess");
  CHECK(cycles.applicable);
  CHECK(cycles.pass);
  CHECK(cycles.observed <= 1.0 + 1e-9);
  CHECK(cycles.observed > 0.0);
  const Clause& fourth = clause(r, "balanced-fourth");
  CHECK(fourth.applicable);
  CHECK(fourth.pass);
  CHECK(fourth.observed >= 0.0);
  CHECK_FALSE(clause(r, "character-probe").applicable);

  BoundReport cyc = equivalence_report(make_group("cyclic:12"), 10, 3, k_supplied(1.0));
  const Clause& probe = clause(cyc, "character-probe");
  CHECK(probe.applicable);
  CHECK(probe.observed == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(probe.pass);
  CHECK(cyc.pass);

  BoundReport none = equivalence_report(make_group("sym:4"), 0, 1, k_supplied(1.0));
  CHECK_FALSE(clause(none, "four-cycle-excess").applicable);
  CHECK_FALSE(clause(none, "balanced-fourth").applicable);
  CHECK(none.pass);

  BoundReport again = equivalence_report(g, 20, 11, k_from_formula(g));
  CHECK(again.clauses[0].observed == r.clauses[0].observed);
  CHECK(again.clauses[1].observed == r.clauses[1].observed);

  CHECK(oracle::error_code_of([&] {
          equivalence_report(g, -1, 0, k_supplied(1.0));
        }) == "bad-input");
}
