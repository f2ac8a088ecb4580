#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qrg/eigensolve.hpp"
#include "qrg/group.hpp"
#include "qrg/subset.hpp"

namespace qrg {

struct SpectralOptions {
  Index cap = 1200;        // largest group order accepted
  double tolerance = 0.0;  // cluster tolerance; <= 0 means max(1e-6 * lambda1, 1e-9)
  bool vectors = false;    // keep eigenvectors of the deflated Gram matrix
  JacobiOptions jacobi{};
};

struct Cluster {
  double value = 0.0;  // largest member of the cluster
  Index multiplicity = 0;
};

// Gram matrix M^T M of the bipartite adjacency M(y, x) = [y x^{-1} in A];
// entry (x, x') counts y with y x^{-1} and y x'^{-1} both in A.
Eigen::MatrixXd bipartite_cayley_gram(const FiniteGroup& group, const Subset& a, Index cap = 1200);

// Labelled 4-cycles of the bipartite graph that start on the domain side,
// counted directly from translate intersections (no eigensolve involved).
std::int64_t count_four_cycles(const FiniteGroup& group, const Subset& a, Index cap = 1200);

struct SpectralReport {
  std::string group;
  Index subset_size = 0;
  double tolerance = 0.0;

  Eigen::VectorXd singular_values;  // descending
  std::vector<Cluster> clusters;
  double lambda1 = 0.0;
  double lambda2 = 0.0;  // largest singular value on the zero-sum subspace
  double sum_squares = 0.0;
  double sum_fourth = 0.0;

  Eigen::VectorXd zero_sum_values;  // deflated spectrum, descending
  std::vector<Cluster> zero_sum_clusters;
  Index top_zero_sum_multiplicity = 0;
  Eigen::MatrixXd zero_sum_vectors;  // columns ordered like zero_sum_values; empty unless requested
};

// Full singular spectrum of the bipartite adjacency of A plus the zero-sum
// restriction, computed by deflating the constant direction (exact for these
// regular graphs) before a second eigensolve.
SpectralReport spectral_report(const FiniteGroup& group, const Subset& a,
                               const SpectralOptions& options = {});

struct SpectralBoundReport {
  double lambda2 = 0.0;
  double bound = 0.0;  // sqrt(|A| n / k)
  bool pass = false;
  Index multiplicity = 0;   // size of the top zero-sum cluster
  bool multiplicity_ok = true;  // multiplicity >= k whenever lambda2 > tolerance
  double tolerance = 0.0;
  int k = 0;
};

// Checks lambda2 <= sqrt(|A| n / k) at relative slack 1e-9, for groups whose
// nontrivial representations all have dimension >= k.
SpectralBoundReport verify_spectral_bound(const SpectralReport& report, int k);
SpectralBoundReport verify_spectral_bound(const FiniteGroup& group, const Subset& a, int k,
                                          const SpectralOptions& options = {});

std::vector<Cluster> cluster_values(const Eigen::VectorXd& descending, double tolerance);

}  // namespace qrg
