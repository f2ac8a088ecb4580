#include "qrg/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qrg/error.hpp"

namespace qrg {

namespace {

void check_cap(const FiniteGroup& group, Index cap) {
  if (group.order() > cap)
    fail("cap-exceeded", "group order " + std::to_string(group.order()) +
                             " exceeds spectral cap " + std::to_string(cap));
}

// row x of the bipartite adjacency, as a set over y: {y : y x^{-1} in A} = A x
std::vector<Subset> adjacency_rows(const FiniteGroup& group, const Subset& a) {
  Index n = group.order();
  std::vector<Subset> rows;
  rows.reserve(n);
  for (Index x = 0; x < n; ++x) rows.push_back(right_translate(group, a, x));
  return rows;
}

}  // namespace

Eigen::MatrixXd bipartite_cayley_gram(const FiniteGroup& group, const Subset& a, Index cap) {
  check_cap(group, cap);
  if (a.universe() != group.order()) fail("bad-input", "subset universe does not match group");
  Index n = group.order();
  std::vector<Subset> rows = adjacency_rows(group, a);
  Eigen::MatrixXd gram(n, n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = x; y < n; ++y) {
      double v = static_cast<double>(rows[x].intersect_count(rows[y]));
      gram(x, y) = v;
      gram(y, x) = v;
    }
  }
  return gram;
}

std::int64_t count_four_cycles(const FiniteGroup& group, const Subset& a, Index cap) {
  check_cap(group, cap);
  if (a.universe() != group.order()) fail("bad-input", "subset universe does not match group");
  Index n = group.order();
  std::vector<Subset> rows = adjacency_rows(group, a);
  std::int64_t total = 0;
  for (Index x = 0; x < n; ++x) {
    total += static_cast<std::int64_t>(a.size()) * a.size();  // diagonal pair (x, x)
    for (Index y = x + 1; y < n; ++y) {
      std::int64_t c = rows[x].intersect_count(rows[y]);
      total += 2 * c * c;
    }
  }
  return total;
}

std::vector<Cluster> cluster_values(const Eigen::VectorXd& descending, double tolerance) {
  std::vector<Cluster> clusters;
  for (Eigen::Index i = 0; i < descending.size(); ++i) {
    if (!clusters.empty() && clusters.back().value - descending[i] <= tolerance)
      ++clusters.back().multiplicity;
    else
      clusters.push_back({descending[i], 1});
  }
  return clusters;
}

SpectralReport spectral_report(const FiniteGroup& group, const Subset& a,
                               const SpectralOptions& options) {
  check_cap(group, options.cap);
  Index n = group.order();
  Eigen::MatrixXd gram = bipartite_cayley_gram(group, a, options.cap);

  SpectralReport report;
  report.group = group.descriptor();
  report.subset_size = a.size();

  JacobiOptions plain = options.jacobi;
  plain.vectors = false;
  JacobiResult<double> full = jacobi_eigensolve<double>(gram, plain);

  report.singular_values.resize(n);
  report.sum_squares = 0.0;
  report.sum_fourth = 0.0;
  for (Index i = 0; i < n; ++i) {
    double ev = std::max(full.eigenvalues[i], 0.0);
    report.singular_values[i] = std::sqrt(ev);
    report.sum_squares += ev;
    report.sum_fourth += ev * ev;
  }
  report.lambda1 = n > 0 ? report.singular_values[0] : 0.0;
  report.tolerance = options.tolerance > 0.0
                         ? options.tolerance
                         : std::max(1e-6 * report.lambda1, 1e-9);
  report.clusters = cluster_values(report.singular_values, report.tolerance);

  // The constant vector is an exact eigenvector (eigenvalue |A|^2); removing
  // its rank-one component leaves the zero-sum spectrum untouched.
  double shift = static_cast<double>(a.size()) * a.size() / n;
  Eigen::MatrixXd deflated = gram - Eigen::MatrixXd::Constant(n, n, shift);
  JacobiOptions with_vectors = options.jacobi;
  with_vectors.vectors = options.vectors;
  JacobiResult<double> rest = jacobi_eigensolve<double>(deflated, with_vectors);

  report.zero_sum_values.resize(n);
  for (Index i = 0; i < n; ++i)
    report.zero_sum_values[i] = std::sqrt(std::max(rest.eigenvalues[i], 0.0));
  report.lambda2 = n > 0 ? report.zero_sum_values[0] : 0.0;
  report.zero_sum_clusters = cluster_values(report.zero_sum_values, report.tolerance);
  report.top_zero_sum_multiplicity =
      report.zero_sum_clusters.empty() ? 0 : report.zero_sum_clusters.front().multiplicity;
  if (options.vectors) report.zero_sum_vectors = std::move(rest.eigenvectors);
  return report;
}

SpectralBoundReport verify_spectral_bound(const SpectralReport& report, int k) {
  if (k < 1) fail("bad-input", "representation dimension bound k must be >= 1");
  SpectralBoundReport out;
  out.k = k;
  out.lambda2 = report.lambda2;
  out.tolerance = report.tolerance;
  double n = static_cast<double>(report.singular_values.size());
  out.bound = std::sqrt(static_cast<double>(report.subset_size) * n / k);
  out.pass = out.lambda2 <= out.bound * (1.0 + 1e-9);
  out.multiplicity = report.top_zero_sum_multiplicity;
  out.multiplicity_ok = report.lambda2 <= report.tolerance || out.multiplicity >= k;
  return out;
}

SpectralBoundReport verify_spectral_bound(const FiniteGroup& group, const Subset& a, int k,
                                          const SpectralOptions& options) {
  return verify_spectral_bound(spectral_report(group, a, options), k);
}

}  // namespace qrg
