#pragma once

#include <Eigen/Dense>
#include <Eigen/Jacobi>
#include <cmath>
#include <numeric>
#include <vector>

#include "qrg/error.hpp"

namespace qrg {

struct JacobiOptions {
  double threshold = 1e-12;  // relative to the Frobenius norm of the input
  int max_sweeps = 50;
  bool vectors = false;
};

template <class Scalar>
struct JacobiResult {
  Eigen::Vector<Scalar, Eigen::Dynamic> eigenvalues;   // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;  // columns, when requested
  int sweeps = 0;
};

namespace detail {

template <class Scalar>
Scalar off_diagonal_norm(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Scalar sum = 0;
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = 0; q < a.cols(); ++q)
      if (p != q) sum += a(p, q) * a(p, q);
  return std::sqrt(sum);
}

}  // namespace detail

// Cyclic-by-row Jacobi eigensolver for symmetric matrices.  Sweeps rotate
// every (p, q) pair in a fixed order; iteration stops when the off-diagonal
// Frobenius norm drops below threshold * ||input||_F, and throws once the
// sweep cap is exhausted without convergence.
template <class Scalar>
JacobiResult<Scalar> jacobi_eigensolve(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
                                       const JacobiOptions& options = {}) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) fail("bad-input", "eigensolver needs a square matrix");

  JacobiResult<Scalar> result;
  Matrix v;
  if (options.vectors) v = Matrix::Identity(n, n);

  const Scalar stop = options.threshold * a.norm();
  bool converged = n < 2 || detail::off_diagonal_norm(a) <= stop;
  while (!converged) {
    if (result.sweeps >= options.max_sweeps)
      fail("no-convergence", "eigensolver sweep cap exhausted");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a(p, p), a(p, q), a(q, q));
        a.applyOnTheLeft(p, q, rot.transpose());
        a.applyOnTheRight(p, q, rot);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        if (options.vectors) v.applyOnTheRight(p, q, rot);
      }
    }
    ++result.sweeps;
    converged = detail::off_diagonal_norm(a) <= stop;
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  result.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) result.eigenvalues[i] = a(order[i], order[i]);
  if (options.vectors) {
    result.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) result.eigenvectors.col(i) = v.col(order[i]);
  }
  return result;
}

}  // namespace qrg
