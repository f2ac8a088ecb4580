#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qrg/chartab.hpp"
#include "qrg/group.hpp"
#include "support.hpp"

using namespace qrg;

namespace {

std::vector<int> sorted_dims(const char* desc) {
  CharacterTable t = character_table(make_group(desc));
  std::vector<int> d = t.dims;
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("six element nonabelian table, every entry") {
  FiniteGroup g = make_group("sym:3");
  CharacterTable t = character_table(g);

  CHECK(t.group == "sym:3");
  CHECK(t.representatives == std::vector<Index>{0, 1, 3});
  CHECK(t.class_sizes == std::vector<Index>{1, 3, 2});
  CHECK(t.identity_class == 0);
  CHECK(t.dims == std::vector<int>{1, 1, 2});
  CHECK(t.exponent == 6);
  CHECK(t.modulus == 7);

  double want[3][3] = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      CHECK(t.table(r, c).real() == doctest::Approx(want[r][c]).epsilon(1e-8).scale(1.0));
      CHECK(std::abs(t.table(r, c).imag()) < 1e-8);
    }
}

TEST_CASE("frozen dimension lists") {
  CHECK(sorted_dims("cyclic:6") == std::vector<int>{1, 1, 1, 1, 1, 1});
  CHECK(sorted_dims("dihedral:4") == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(sorted_dims("dihedral:5") == std::vector<int>{1, 1, 2, 2});
  CHECK(sorted_dims("sym:4") == std::vector<int>{1, 1, 2, 3, 3});
  CHECK(sorted_dims("alt:5") == std::vector<int>{1, 3, 3, 4, 5});
  CHECK(sorted_dims("psl2:5") == std::vector<int>{1, 3, 3, 4, 5});
  CHECK(sorted_dims("psl2:7") == std::vector<int>{1, 3, 3, 6, 7, 8});
  CHECK(sorted_dims("psl2:13") == std::vector<int>{1, 7, 7, 12, 12, 12, 13, 14, 14});
}

TEST_CASE("table invariants across the catalog") {
  for (const char* desc : {"cyclic:5", "cyclic:8", "dihedral:3", "dihedral:6", "dihedral:7",
                           "sym:3", "sym:4", "sym:5", "alt:4", "alt:5", "psl2:5", "psl2:7",
                           "psl2:11", "product:cyclic:2,cyclic:4"}) {
    CAPTURE(desc);
    FiniteGroup g = make_group(desc);
    CharacterTable t = character_table(g);
    Index n = g.order();
    int r = static_cast<int>(t.dims.size());
    REQUIRE(r == static_cast<int>(t.class_sizes.size()));
    REQUIRE(t.table.rows() == r);
    REQUIRE(t.table.cols() == r);

    long long class_total = 0, dim_total = 0;
    for (int i = 0; i < r; ++i) {
      class_total += t.class_sizes[i];
      dim_total += static_cast<long long>(t.dims[i]) * t.dims[i];
      CHECK(n % t.dims[i] == 0);  // irreducible degrees divide the order
    }
    CHECK(class_total == n);
    CHECK(dim_total == n);
    CHECK(n % t.exponent == 0);
    CHECK(t.modulus % t.exponent == 1);
    CHECK(t.modulus > 2.0 * std::sqrt(static_cast<double>(n)));

    for (int c = 0; c < r; ++c) {
      CHECK(t.table(0, c) == std::complex<double>(1.0, 0.0));  // trivial row is exact
      CHECK(std::abs(t.table(c, t.identity_class) -
                     std::complex<double>(t.dims[c], 0.0)) < 1e-8 * n);
    }

    // weighted row orthogonality
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        std::complex<double> dot = 0.0;
        for (int c = 0; c < r; ++c)
          dot += t.table(a, c) * std::conj(t.table(b, c)) * static_cast<double>(t.class_sizes[c]);
        double want = a == b ? static_cast<double>(n) : 0.0;
        CHECK(std::abs(dot - want) < 1e-6 * n);
      }

    // column orthogonality pins each class size
    for (int c = 0; c < r; ++c)
      for (int d = 0; d < r; ++d) {
        std::complex<double> dot = 0.0;
        for (int a = 0; a < r; ++a) dot += t.table(a, c) * std::conj(t.table(a, d));
        double want = c == d ? static_cast<double>(n) / t.class_sizes[c] : 0.0;
        CHECK(std::abs(dot - want) < 1e-6 * n);
      }
  }
}

TEST_CASE("symmetric group tables are integer valued") {
  for (const char* desc : {"sym:3", "sym:4", "sym:5"}) {
    CharacterTable t = character_table(make_group(desc));
    for (int a = 0; a < t.table.rows(); ++a)
      for (int c = 0; c < t.table.cols(); ++c) {
        CHECK(std::abs(t.table(a, c).imag()) < 1e-8);
        CHECK(std::abs(t.table(a, c).real() - std::round(t.table(a, c).real())) < 1e-8);
      }
  }
}

TEST_CASE("identical inputs give identical tables") {
  CharacterTable a = character_table(make_group("psl2:7"));
  CharacterTable b = character_table(make_group("psl2:7"));
  CHECK(a.representatives == b.representatives);
  CHECK(a.dims == b.dims);
  CHECK(a.modulus == b.modulus);
  CHECK(a.table == b.table);
}

TEST_CASE("smallest nontrivial representation dimension") {
  CHECK(min_nontrivial_irrep_dim(make_group("cyclic:2")) == 1);
  CHECK(min_nontrivial_irrep_dim(make_group("sym:4")) == 1);
  CHECK(min_nontrivial_irrep_dim(make_group("alt:5")) == 3);
  CHECK(min_nontrivial_irrep_dim(make_group("psl2:5")) == 3);
  CHECK(min_nontrivial_irrep_dim(make_group("psl2:7")) == 3);
  CHECK(min_nontrivial_irrep_dim(make_group("psl2:13")) == 7);
  CHECK(oracle::error_code_of([] {
          min_nontrivial_irrep_dim(make_group("cyclic:1"));
        }) == "bad-input");
}

TEST_CASE("dimension lower bounds by group family") {
  // the minimum sits at (q-1)/2 when q is 3 mod 4 and (q+1)/2 when q is 1 mod 4
  for (auto [q, want_k] : {std::pair{5, 3}, {7, 3}, {11, 5}, {13, 7}}) {
    RepBoundReport r = verify_rep_bounds(make_group("psl2:" + std::to_string(q)), "psl2");
    CHECK(r.k == want_k);
    CHECK(r.bound == doctest::Approx((q - 1) / 2.0));
    CHECK(r.pass);
    CHECK(r.context == "psl2");
  }

  RepBoundReport simple = verify_rep_bounds(make_group("alt:5"), "simple");
  CHECK(simple.k == 3);
  CHECK(simple.bound == doctest::Approx(std::sqrt(std::log(60.0)) / 2.0));
  CHECK(simple.pass);

  CHECK(oracle::error_code_of([] {
          verify_rep_bounds(make_group("sym:4"), "psl2");
        }) == "bad-input");
  CHECK(oracle::error_code_of([] {
          verify_rep_bounds(make_group("alt:5"), "nope");
        }) == "bad-input");
}

TEST_CASE("caps bound the work") {
  ChartabOptions tight;
  tight.order_cap = 100;
  CHECK(oracle::error_code_of([&] {
          character_table(make_group("psl2:7"), tight);
        }) == "cap-exceeded");

  // fifty conjugacy classes against the default class cap of forty
  CHECK(oracle::error_code_of([] {
          character_table(make_group("cyclic:50"));
        }) == "cap-exceeded");
}
