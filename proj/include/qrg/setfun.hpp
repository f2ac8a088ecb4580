#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qrg/group.hpp"
#include "qrg/subset.hpp"

namespace qrg {

// Complex valued function on a group's index range.
struct GroupFunction {
  Eigen::VectorXcd values;

  Index universe() const { return static_cast<Index>(values.size()); }
};

GroupFunction indicator(const Subset& a);
// indicator minus its mean; sums to zero
GroupFunction balanced_indicator(const Subset& a);
// j -> exp(2*pi*i*j*freq/n) on cyclic groups
GroupFunction cyclic_character(const FiniteGroup& group, Index freq);

struct SplitMix64;

// half the elements +1, half -1 (one 0 when n is odd); sums to zero
GroupFunction random_balanced_function(Index universe, SplitMix64& rng);

// |sum f| <= tol * n, default tol 1e-9
bool is_balanced(const GroupFunction& f, double tol = 1e-9);
double max_modulus(const GroupFunction& f);

// (f*g)(y) = sum over u*v = y of f(u) g(v); O(n^2)
GroupFunction convolve(const FiniteGroup& group, const GroupFunction& f, const GroupFunction& g);

// integer convolution of indicator functions: result[y] = #{(a,b) in A x B : a*b = y}
std::vector<std::int64_t> indicator_convolve(const FiniteGroup& group, const Subset& a,
                                             const Subset& b);

// #{(a,b,c) in A x B x C : a*b = c}
std::int64_t count_triples(const FiniteGroup& group, const Subset& a, const Subset& b,
                           const Subset& c);

// sum over y of |sum over x of f(x) * conj(f(y*x))|^2; equals the number of
// quadruples (a,b,c,d) with a*b^{-1} = c*d^{-1} weighted by
// f(a) conj(f(b)) conj(f(c)) f(d).
double count_quadruples(const FiniteGroup& group, const GroupFunction& f);

struct QuasirandomnessResult {
  double value = 0.0;      // quadruple sum / n^3
  bool balanced = true;    // input summed to ~0
  bool modulus_ok = true;  // |f| <= 1 + 1e-9 everywhere
};

// Quadruple sum normalized by n^3.  Preconditions are reported, not enforced;
// the value is computed either way.
QuasirandomnessResult quasirandomness_constant(const FiniteGroup& group, const GroupFunction& f);

// |A intersect x*B|
Index translate_intersection(const FiniteGroup& group, const Subset& a, const Subset& b, Index x);

}  // namespace qrg
