#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qrg/group.hpp"

namespace qrg {

struct ChartabOptions {
  Index order_cap = 5000;
  int class_cap = 40;
  long long modulus_bound = 10'000'000;  // prime search bound for the modular stage
};

struct CharacterTable {
  std::string group;
  std::vector<Index> representatives;  // least member of each class
  std::vector<Index> class_sizes;
  Index identity_class = 0;
  std::vector<int> dims;    // per row; row 0 is the trivial character
  Eigen::MatrixXcd table;   // rows characters, columns classes
  long long modulus = 0;    // prime used by the modular stage
  long long exponent = 0;   // lcm of element orders
};

// Character table via class-sum structure constants diagonalized over a prime
// field, lifted to complex values through root-of-unity multiplicities.
// Deterministic: class matrices processed in ascending class index, rows
// ordered trivial first then by dimension and value.
CharacterTable character_table(const FiniteGroup& group, const ChartabOptions& options = {});

// Smallest dimension among nontrivial irreducible characters; errors on the
// one-element group.
int min_nontrivial_irrep_dim(const FiniteGroup& group, const ChartabOptions& options = {});

struct RepBoundReport {
  int k = 0;           // computed minimal nontrivial irrep dimension
  double bound = 0.0;
  bool pass = false;
  std::string context;
};

// context "psl2": bound (q-1)/2 from the group parameter.
// context "simple": bound sqrt(ln n)/2; the caller asserts simplicity.
RepBoundReport verify_rep_bounds(const FiniteGroup& group, const std::string& context,
                                 const ChartabOptions& options = {});

}  // namespace qrg
