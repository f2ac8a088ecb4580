#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include "qrg/group.hpp"
#include "qrg/rng.hpp"
#include "qrg/setfun.hpp"
#include "qrg/subset.hpp"
#include "support.hpp"

using namespace qrg;

namespace {

bool close_all(const GroupFunction& f, const GroupFunction& g, double tol) {
  if (f.universe() != g.universe()) return false;
  for (Index i = 0; i < f.universe(); ++i)
    if (std::abs(f.values[i] - g.values[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("indicator and balanced indicator") {
  Subset a(10);
  a.set(0);
  a.set(2);
  a.set(5);
  GroupFunction ind = indicator(a);
  for (Index i = 0; i < 10; ++i) {
    CHECK(ind.values[i].imag() == 0.0);
    CHECK(ind.values[i].real() == (a.test(i) ? 1.0 : 0.0));
  }
  CHECK(max_modulus(ind) == doctest::Approx(1.0));
  CHECK_FALSE(is_balanced(ind));

  GroupFunction bal = balanced_indicator(a);
  std::complex<double> sum = 0.0;
  for (Index i = 0; i < 10; ++i) {
    sum += bal.values[i];
    CHECK(bal.values[i].real() == doctest::Approx((a.test(i) ? 1.0 : 0.0) - 0.3));
  }
  CHECK(std::abs(sum) < 1e-12);
  CHECK(is_balanced(bal));
  CHECK(max_modulus(bal) == doctest::Approx(0.7));
}

TEST_CASE("convolving with the identity indicator changes nothing") {
  FiniteGroup g = make_group("sym:3");
  Subset e(g.order());
  e.set(g.identity());
  GroupFunction delta = indicator(e);

  SplitMix64 rng(11);
  GroupFunction f = random_balanced_function(g.order(), rng);
  CHECK(close_all(convolve(g, delta, f), f, 1e-12));
  CHECK(close_all(convolve(g, f, delta), f, 1e-12));
}

TEST_CASE("convolution is associative") {
  FiniteGroup g = make_group("dihedral:4");
  SplitMix64 rng(5);
  GroupFunction f1 = random_balanced_function(g.order(), rng);
  GroupFunction f2 = random_balanced_function(g.order(), rng);
  GroupFunction f3 = random_balanced_function(g.order(), rng);
  GroupFunction left = convolve(g, convolve(g, f1, f2), f3);
  GroupFunction right = convolve(g, f1, convolve(g, f2, f3));
  CHECK(close_all(left, right, 1e-9));
}

TEST_CASE("indicator convolution counts factorizations") {
  for (const char* desc : {"cyclic:12", "sym:3", "dihedral:5"}) {
    FiniteGroup g = make_group(desc);
    SplitMix64 rng(7);
    Subset a = random_subset(g.order(), 0.4, rng);
    Subset b = random_subset(g.order(), 0.6, rng);
    std::vector<std::int64_t> conv = indicator_convolve(g, a, b);
    REQUIRE(static_cast<Index>(conv.size()) == g.order());

    std::vector<std::int64_t> brute(g.order(), 0);
    for (Index x : a.elements())
      for (Index y : b.elements()) ++brute[g.mult(x, y)];
    CHECK(conv == brute);

    std::int64_t total = 0;
    for (std::int64_t c : conv) total += c;
    CHECK(total == static_cast<std::int64_t>(a.size()) * b.size());

    // complex route agrees with the integer route
    GroupFunction cf = convolve(g, indicator(a), indicator(b));
    for (Index y = 0; y < g.order(); ++y) {
      CHECK(std::abs(cf.values[y].imag()) < 1e-9);
      CHECK(cf.values[y].real() == doctest::Approx(static_cast<double>(conv[y])));
    }
  }
}

TEST_CASE("triple counts match direct enumeration") {
  std::uint64_t seed = 100;
  for (const char* desc : {"cyclic:12", "dihedral:6", "sym:4", "psl2:5"}) {
    FiniteGroup g = make_group(desc);
    SplitMix64 rng(seed++);
    for (int trial = 0; trial < 4; ++trial) {
      Subset a = random_subset(g.order(), 0.3 + 0.2 * trial, rng);
      Subset b = random_subset(g.order(), 0.5, rng);
      Subset c = random_subset(g.order(), 0.4, rng);
      CHECK(count_triples(g, a, b, c) == oracle::triples(g, a, b, c));
    }
    Subset full = Subset::full(g.order());
    CHECK(count_triples(g, full, full, full) ==
          static_cast<std::int64_t>(g.order()) * g.order());
    Subset empty(g.order());
    CHECK(count_triples(g, empty, full, full) == 0);
  }
}

TEST_CASE("translate intersections") {
  FiniteGroup g = make_group("sym:4");
  SplitMix64 rng(21);
  Subset a = random_subset(g.order(), 0.5, rng);
  Subset b = random_subset(g.order(), 0.5, rng);
  CHECK(translate_intersection(g, a, b, g.identity()) == a.intersect_count(b));
  for (Index x = 0; x < g.order(); ++x) {
    Index brute = 0;
    for (Index v : a.elements())
      if (b.test(g.mult(g.inv(x), v))) ++brute;
    CHECK(translate_intersection(g, a, b, x) == brute);
  }
  Subset full = Subset::full(g.order());
  for (Index x : {0, 5, 23}) CHECK(translate_intersection(g, full, full, x) == g.order());
}

TEST_CASE("quadruple counts match direct enumeration") {
  std::uint64_t seed = 300;
  for (const char* desc : {"cyclic:12", "dihedral:6", "alt:4", "psl2:5"}) {
    FiniteGroup g = make_group(desc);
    SplitMix64 rng(seed++);

    GroupFunction f = random_balanced_function(g.order(), rng);
    double fast = count_quadruples(g, f);
    double slow = oracle::quadruples(g, f);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-6));
    CHECK(fast >= -1e-9);

    Subset a = random_subset(g.order(), 0.5, rng);
    GroupFunction bal = balanced_indicator(a);
    CHECK(count_quadruples(g, bal) ==
          doctest::Approx(oracle::quadruples(g, bal)).epsilon(1e-6));
  }
}

TEST_CASE("quadruple count is invariant under a global phase") {
  FiniteGroup g = make_group("cyclic:16");
  SplitMix64 rng(9);
  GroupFunction f = random_balanced_function(g.order(), rng);
  GroupFunction rotated = f;
  std::complex<double> u = std::polar(1.0, 0.8342);
  for (Index i = 0; i < g.order(); ++i) rotated.values[i] *= u;
  CHECK(count_quadruples(g, rotated) == doctest::Approx(count_quadruples(g, f)).epsilon(1e-9));
}

TEST_CASE("nontrivial cyclic characters sit at the extreme value") {
  for (Index n : {5, 8, 16}) {
    FiniteGroup g = make_group("cyclic:" + std::to_string(n));
    for (Index freq = 1; freq < n; ++freq) {
      GroupFunction chi = cyclic_character(g, freq);
      CHECK(max_modulus(chi) == doctest::Approx(1.0));
      QuasirandomnessResult r = quasirandomness_constant(g, chi);
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(r.balanced);
      CHECK(r.modulus_ok);
    }
    // frequency 0 is the trivial character: same value, no longer balanced
    QuasirandomnessResult trivial = quasirandomness_constant(g, cyclic_character(g, 0));
    CHECK(trivial.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(trivial.balanced);
  }
  CHECK(oracle::error_code_of([] {
          cyclic_character(make_group("sym:3"), 1);
        }) == "bad-input");
}

TEST_CASE("random balanced functions split evenly") {
  SplitMix64 rng(42);
  GroupFunction even = random_balanced_function(10, rng);
  int plus = 0, minus = 0, zero = 0;
  for (Index i = 0; i < 10; ++i) {
    double v = even.values[i].real();
    CHECK(even.values[i].imag() == 0.0);
    if (v == 1.0) ++plus;
    else if (v == -1.0) ++minus;
    else if (v == 0.0) ++zero;
  }
  CHECK(plus == 5);
  CHECK(minus == 5);
  CHECK(zero == 0);
  CHECK(is_balanced(even));

  GroupFunction odd = random_balanced_function(7, rng);
  plus = minus = zero = 0;
  for (Index i = 0; i < 7; ++i) {
    double v = odd.values[i].real();
    if (v == 1.0) ++plus;
    else if (v == -1.0) ++minus;
    else if (v == 0.0) ++zero;
  }
  CHECK(plus == 3);
  CHECK(minus == 3);
  CHECK(zero == 1);
  CHECK(is_balanced(odd));

  SplitMix64 r1(77), r2(77), r3(78);
  GroupFunction a = random_balanced_function(12, r1);
  GroupFunction b = random_balanced_function(12, r2);
  GroupFunction c = random_balanced_function(12, r3);
  CHECK(close_all(a, b, 0.0));
  CHECK_FALSE(close_all(a, c, 0.0));
}

TEST_CASE("quasirandomness preconditions are reported, not enforced") {
  FiniteGroup g = make_group("cyclic:9");
  SplitMix64 rng(15);
  GroupFunction f = random_balanced_function(g.order(), rng);
  for (Index i = 0; i < g.order(); ++i) f.values[i] *= 2.0;
  QuasirandomnessResult r = quasirandomness_constant(g, f);
  CHECK(r.balanced);
  CHECK_FALSE(r.modulus_ok);
  CHECK(r.value >= 0.0);

  Subset a(g.order());
  a.set(1);
  a.set(4);
  QuasirandomnessResult s = quasirandomness_constant(g, indicator(a));
  CHECK_FALSE(s.balanced);
  CHECK(s.modulus_ok);
}

TEST_CASE("universe mismatches are rejected") {
  FiniteGroup g = make_group("sym:3");
  GroupFunction f;
  f.values.resize(5);
  f.values.setZero();
  CHECK(oracle::error_code_of([&] { count_quadruples(g, f); }) == "bad-input");
  CHECK(oracle::error_code_of([&] {
          convolve(g, f, f);
        }) == "bad-input");
  Subset wrong(5);
  Subset right(g.order());
  CHECK(oracle::error_code_of([&] {
          count_triples(g, wrong, right, right);
        }) == "bad-input");
  CHECK(oracle::error_code_of([&] {
          translate_intersection(g, right, wrong, 0);
        }) == "bad-input");
}
