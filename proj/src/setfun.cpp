#include "qrg/setfun.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "qrg/error.hpp"
#include "qrg/rng.hpp"

namespace qrg {

namespace {

void require_match(const FiniteGroup& group, Index universe) {
  if (group.order() != universe)
    fail("bad-input", "function or subset universe does not match the group order");
}

}  // namespace

GroupFunction indicator(const Subset& a) {
  GroupFunction f;
  f.values = Eigen::VectorXcd::Zero(a.universe());
  a.for_each([&](Index i) { f.values[i] = 1.0; });
  return f;
}

GroupFunction balanced_indicator(const Subset& a) {
  GroupFunction f = indicator(a);
  f.values.array() -= a.density();
  return f;
}

GroupFunction cyclic_character(const FiniteGroup& group, Index freq) {
  if (group.kind() != GroupKind::cyclic)
    fail("bad-input", "characters via frequency are only defined for cyclic groups");
  Index n = group.order();
  GroupFunction f;
  f.values.resize(n);
  for (Index j = 0; j < n; ++j) {
    double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) * freq / n);
    f.values[j] = std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return f;
}

GroupFunction random_balanced_function(Index universe, SplitMix64& rng) {
  std::vector<Index> order(universe);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  GroupFunction f;
  f.values = Eigen::VectorXcd::Zero(universe);
  Index half = universe / 2;
  for (Index i = 0; i < half; ++i) f.values[order[i]] = 1.0;
  for (Index i = half; i < 2 * half; ++i) f.values[order[i]] = -1.0;
  return f;
}

bool is_balanced(const GroupFunction& f, double tol) {
  return std::abs(f.values.sum()) <= tol * static_cast<double>(f.values.size());
}

double max_modulus(const GroupFunction& f) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) m = std::max(m, std::abs(f.values[i]));
  return m;
}

GroupFunction convolve(const FiniteGroup& group, const GroupFunction& f, const GroupFunction& g) {
  Index n = group.order();
  require_match(group, f.universe());
  require_match(group, g.universe());
  GroupFunction h;
  h.values = Eigen::VectorXcd::Zero(n);
  for (Index u = 0; u < n; ++u) {
    std::complex<double> fu = f.values[u];
    if (fu == 0.0) continue;
    for (Index v = 0; v < n; ++v) h.values[group.mult(u, v)] += fu * g.values[v];
  }
  return h;
}

std::vector<std::int64_t> indicator_convolve(const FiniteGroup& group, const Subset& a,
                                             const Subset& b) {
  require_match(group, a.universe());
  require_match(group, b.universe());
  std::vector<std::int64_t> out(group.order(), 0);
  a.for_each([&](Index x) { b.for_each([&](Index y) { ++out[group.mult(x, y)]; }); });
  return out;
}

std::int64_t count_triples(const FiniteGroup& group, const Subset& a, const Subset& b,
                           const Subset& c) {
  require_match(group, a.universe());
  require_match(group, b.universe());
  require_match(group, c.universe());
  std::vector<std::int64_t> ab = indicator_convolve(group, a, b);
  std::int64_t total = 0;
  c.for_each([&](Index y) { total += ab[y]; });
  return total;
}

double count_quadruples(const FiniteGroup& group, const GroupFunction& f) {
  Index n = group.order();
  require_match(group, f.universe());
  double total = 0.0;
  for (Index y = 0; y < n; ++y) {
    std::complex<double> inner = 0.0;
    for (Index x = 0; x < n; ++x) inner += f.values[x] * std::conj(f.values[group.mult(y, x)]);
    total += std::norm(inner);
  }
  return total;
}

QuasirandomnessResult quasirandomness_constant(const FiniteGroup& group, const GroupFunction& f) {
  QuasirandomnessResult r;
  r.balanced = is_balanced(f);
  r.modulus_ok = max_modulus(f) <= 1.0 + 1e-9;
  double n = group.order();
  r.value = count_quadruples(group, f) / (n * n * n);
  return r;
}

Index translate_intersection(const FiniteGroup& group, const Subset& a, const Subset& b, Index x) {
  require_match(group, a.universe());
  require_match(group, b.universe());
  Index count = 0;
  b.for_each([&](Index y) {
    if (a.test(group.mult(x, y))) ++count;
  });
  return count;
}

}  // namespace qrg
