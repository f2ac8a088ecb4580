#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qrg/eigensolve.hpp"
#include "qrg/group.hpp"
#include "qrg/rng.hpp"
#include "qrg/spectral.hpp"
#include "qrg/subset.hpp"
#include "support.hpp"

using namespace qrg;

namespace {

Subset of(Index n, std::initializer_list<Index> elems) {
  Subset s(n);
  for (Index e : elems) s.set(e);
  return s;
}

// zero singular values come back as sqrt(tiny), so the comparison needs an
// absolute component
void check_close(const Eigen::VectorXd& got, const std::vector<double>& want, double tol) {
  REQUIRE(static_cast<std::size_t>(got.size()) == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_CASE("frozen four element spectra") {
  FiniteGroup g = make_group("cyclic:4");

  SpectralReport even = spectral_report(g, of(4, {0, 2}));
  check_close(even.singular_values, {2.0, 2.0, 0.0, 0.0}, 1e-5);
  CHECK(even.lambda1 == doctest::Approx(2.0));
  CHECK(even.lambda2 == doctest::Approx(2.0));
  CHECK(even.zero_sum_values[0] == doctest::Approx(2.0));
  CHECK(even.top_zero_sum_multiplicity == 1);
  CHECK(even.subset_size == 2);
  CHECK(even.group == "cyclic:4");

  double r2 = std::sqrt(2.0);
  SpectralReport adj = spectral_report(g, of(4, {0, 1}));
  check_close(adj.singular_values, {2.0, r2, r2, 0.0}, 1e-5);
  CHECK(adj.lambda2 == doctest::Approx(r2));
  CHECK(adj.top_zero_sum_multiplicity == 2);
}

TEST_CASE("gram matrix matches direct counting") {
  std::uint64_t seed = 50;
  for (const char* desc : {"cyclic:12", "sym:4", "psl2:5"}) {
    FiniteGroup g = make_group(desc);
    SplitMix64 rng(seed++);
    Subset a = random_subset(g.order(), 0.45, rng);
    Eigen::MatrixXd m = bipartite_cayley_gram(g, a);
    REQUIRE(m.rows() == g.order());
    REQUIRE(m.cols() == g.order());
    Eigen::MatrixXd brute = oracle::gram(g, a);
    for (Index x = 0; x < g.order(); ++x)
      for (Index y = 0; y < g.order(); ++y) CHECK(m(x, y) == brute(x, y));
  }
}

TEST_CASE("jacobi agrees with a second eigensolver") {
  SplitMix64 rng(4);
  for (int n : {6, 12, 20}) {
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = 2.0 * rng.uniform() - 1.0;
    Eigen::MatrixXd sym = b + b.transpose();
    JacobiResult<double> mine = jacobi_eigensolve(sym);
    std::vector<double> other = oracle::sym_eigs_desc(sym);
    REQUIRE(mine.eigenvalues.size() == static_cast<Eigen::Index>(other.size()));
    for (int i = 0; i < n; ++i)
      CHECK(mine.eigenvalues[i] == doctest::Approx(other[i]).epsilon(1e-9).scale(1.0));
  }

  FiniteGroup g = make_group("psl2:5");
  Subset a = random_subset(g.order(), 0.4, rng);
  Eigen::MatrixXd gram = bipartite_cayley_gram(g, a);
  JacobiResult<double> mine = jacobi_eigensolve(gram);
  std::vector<double> other = oracle::sym_eigs_desc(gram);
  for (Index i = 0; i < g.order(); ++i)
    CHECK(mine.eigenvalues[i] ==
          doctest::Approx(other[i]).epsilon(1e-9).scale(std::abs(other[0]) + 1.0));
}

TEST_CASE("jacobi eigenvectors diagonalize the input") {
  SplitMix64 rng(8);
  int n = 10;
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = 2.0 * rng.uniform() - 1.0;
  Eigen::MatrixXd sym = b + b.transpose();
  JacobiOptions opts;
  opts.vectors = true;
  JacobiResult<double> r = jacobi_eigensolve(sym, opts);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd residual = sym * r.eigenvectors.col(i) - r.eigenvalues[i] * r.eigenvectors.col(i);
    CHECK(residual.norm() < 1e-8);
    CHECK(r.eigenvectors.col(i).norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("spectral identities on seeded subsets") {
  std::uint64_t seed = 900;
  for (const char* desc : {"sym:4", "psl2:5", "dihedral:8"}) {
    FiniteGroup g = make_group(desc);
    Index n = g.order();
    SplitMix64 rng(seed++);
    for (int trial = 0; trial < 3; ++trial) {
      Subset a = random_subset(n, 0.25 + 0.25 * trial, rng);
      SpectralReport rep = spectral_report(g, a);
      double size = a.size();
      CHECK(rep.lambda1 == doctest::Approx(size).epsilon(1e-9));
      CHECK(rep.sum_squares == doctest::Approx(size * n).epsilon(1e-9));
      CHECK(rep.sum_fourth ==
            doctest::Approx(static_cast<double>(oracle::four_cycles(g, a))).epsilon(1e-6));

      // deflation only swaps the constant-direction value for a zero
      std::vector<double> merged_a(rep.zero_sum_values.data(),
                                   rep.zero_sum_values.data() + rep.zero_sum_values.size());
      merged_a.push_back(rep.lambda1);
      std::vector<double> merged_b(rep.singular_values.data(),
                                   rep.singular_values.data() + rep.singular_values.size());
      merged_b.push_back(0.0);
      std::sort(merged_a.begin(), merged_a.end());
      std::sort(merged_b.begin(), merged_b.end());
      for (std::size_t i = 0; i < merged_a.size(); ++i)
        CHECK(merged_a[i] == doctest::Approx(merged_b[i]).epsilon(1e-5).scale(size + 1.0));
    }
  }
}

TEST_CASE("four cycle count needs no eigensolve") {
  std::uint64_t seed = 1200;
  for (const char* desc : {"cyclic:15", "alt:4", "sym:4"}) {
    FiniteGroup g = make_group(desc);
    SplitMix64 rng(seed++);
    Subset a = random_subset(g.order(), 0.5, rng);
    CHECK(count_four_cycles(g, a) == oracle::four_cycles(g, a));
  }
  FiniteGroup g = make_group("cyclic:6");
  Subset full = Subset::full(6);
  // every (x, x', y, y') contributes when A is the whole group
  CHECK(count_four_cycles(g, full) == 6LL * 6 * 6 * 6);
}

TEST_CASE("second singular value bound on a quasirandom group") {
  FiniteGroup g = make_group("psl2:5");
  Index n = g.order();
  SplitMix64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    Subset a = random_subset(n, 0.2 + 0.15 * trial, rng);
    SpectralBoundReport b = verify_spectral_bound(g, a, 2);
    CHECK(b.k == 2);
    CHECK(b.bound == doctest::Approx(std::sqrt(static_cast<double>(a.size()) * n / 2.0)));
    CHECK(b.pass);
    CHECK(b.multiplicity_ok);
    if (b.lambda2 > b.tolerance) CHECK(b.multiplicity >= 2);

    SpectralReport rep = spectral_report(g, a);
    SpectralBoundReport via_report = verify_spectral_bound(rep, 2);
    CHECK(via_report.lambda2 == doctest::Approx(b.lambda2));
    CHECK(via_report.pass == b.pass);
  }
  CHECK(oracle::error_code_of([&] {
          verify_spectral_bound(g, Subset::full(n), 0);
        }) == "bad-input");
}

TEST_CASE("spectrum is translation invariant") {
  FiniteGroup g = make_group("sym:4");
  SplitMix64 rng(77);
  Subset a = random_subset(g.order(), 0.4, rng);
  SpectralReport base = spectral_report(g, a);
  for (Index t : {1, 7, 20}) {
    SpectralReport right = spectral_report(g, right_translate(g, a, t));
    SpectralReport left = spectral_report(g, left_translate(g, t, a));
    for (Index i = 0; i < g.order(); ++i) {
      CHECK(right.singular_values[i] ==
            doctest::Approx(base.singular_values[i]).epsilon(1e-5).scale(base.lambda1 + 1.0));
      CHECK(left.singular_values[i] ==
            doctest::Approx(base.singular_values[i]).epsilon(1e-5).scale(base.lambda1 + 1.0));
    }
  }
}

TEST_CASE("deflated vectors are eigenvectors of the deflated gram") {
  FiniteGroup g = make_group("cyclic:12");
  SplitMix64 rng(13);
  Subset a = random_subset(12, 0.5, rng);
  SpectralOptions opts;
  opts.vectors = true;
  SpectralReport rep = spectral_report(g, a, opts);
  REQUIRE(rep.zero_sum_vectors.cols() == 12);

  double size = a.size();
  Eigen::MatrixXd deflated = bipartite_cayley_gram(g, a);
  deflated.array() -= size * size / 12.0;
  for (Index i = 0; i < 12; ++i) {
    Eigen::VectorXd v = rep.zero_sum_vectors.col(i);
    double lam = rep.zero_sum_values[i] * rep.zero_sum_values[i];
    CHECK((deflated * v - lam * v).norm() < 1e-7 * (size * size + 1.0));
  }
}

TEST_CASE("caps and cluster tolerances") {
  FiniteGroup g = make_group("psl2:7");
  SpectralOptions small;
  small.cap = 100;
  CHECK(oracle::error_code_of([&] {
          spectral_report(g, Subset::full(g.order()), small);
        }) == "cap-exceeded");
  CHECK(oracle::error_code_of([&] {
          bipartite_cayley_gram(g, Subset::full(g.order()), 10);
        }) == "cap-exceeded");
  CHECK(oracle::error_code_of([&] {
          count_four_cycles(g, Subset::full(g.order()), 10);
        }) == "cap-exceeded");

  FiniteGroup c4 = make_group("cyclic:4");
  SpectralOptions coarse;
  coarse.tolerance = 0.7;
  SpectralReport rep = spectral_report(c4, of(4, {0, 1}), coarse);
  REQUIRE(rep.clusters.size() == 2);
  CHECK(rep.clusters[0].value == doctest::Approx(2.0));
  CHECK(rep.clusters[0].multiplicity == 3);
  CHECK(rep.clusters[1].multiplicity == 1);

  Eigen::VectorXd vals(5);
  vals << 5.0, 4.9, 3.0, 2.95, 2.9;
  std::vector<Cluster> clusters = cluster_values(vals, 0.2);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].value == doctest::Approx(5.0));
  CHECK(clusters[0].multiplicity == 2);
  CHECK(clusters[1].value == doctest::Approx(3.0));
  CHECK(clusters[1].multiplicity == 3);
}
