#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qrg/error.hpp"
#include "qrg/group.hpp"
#include "qrg/setfun.hpp"
#include "qrg/solver.hpp"
#include "qrg/subset.hpp"

// Brute-force reference computations, kept deliberately independent of the
// library's algorithmic shortcuts.
namespace oracle {

inline std::int64_t triples(const qrg::FiniteGroup& g, const qrg::Subset& a, const qrg::Subset& b,
                            const qrg::Subset& c) {
  std::int64_t count = 0;
  for (qrg::Index x = 0; x < g.order(); ++x) {
    if (!a.test(x)) continue;
    for (qrg::Index y = 0; y < g.order(); ++y)
      if (b.test(y) && c.test(g.mult(x, y))) ++count;
  }
  return count;
}

// full expansion over (a, b, c) with d pinned by b a^{-1} c
inline double quadruples(const qrg::FiniteGroup& g, const qrg::GroupFunction& f) {
  std::complex<double> total = 0.0;
  for (qrg::Index a = 0; a < g.order(); ++a)
    for (qrg::Index b = 0; b < g.order(); ++b) {
      qrg::Index ba = g.mult(b, g.inv(a));
      for (qrg::Index c = 0; c < g.order(); ++c) {
        qrg::Index d = g.mult(ba, c);
        total += f.values[a] * std::conj(f.values[b]) * std::conj(f.values[c]) * f.values[d];
      }
    }
  return total.real();
}

// Gram(x, x') = |Ax intersect Ax'| = #{u in A : u x x'^{-1} in A}
inline Eigen::MatrixXd gram(const qrg::FiniteGroup& g, const qrg::Subset& a) {
  qrg::Index n = g.order();
  Eigen::MatrixXd m(n, n);
  for (qrg::Index x = 0; x < n; ++x)
    for (qrg::Index y = 0; y < n; ++y) {
      qrg::Index t = g.mult(x, g.inv(y));
      std::int64_t count = 0;
      for (qrg::Index u = 0; u < n; ++u)
        if (a.test(u) && a.test(g.mult(u, t))) ++count;
      m(x, y) = static_cast<double>(count);
    }
  return m;
}

// labelled closed 4-cycles of the bipartite graph: sum of squared co-degrees
inline std::int64_t four_cycles(const qrg::FiniteGroup& g, const qrg::Subset& a) {
  Eigen::MatrixXd m = gram(g, a);
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::int64_t v = static_cast<std::int64_t>(m(i, j) + 0.5);
      total += v * v;
    }
  return total;
}

inline std::vector<double> sym_eigs_desc(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline qrg::Index eval_word(const qrg::FiniteGroup& g, const qrg::Word& word,
                            const std::vector<qrg::Index>& assignment) {
  qrg::Index value = g.identity();
  for (const qrg::Symbol& s : word) {
    qrg::Index x = assignment[s.var - 1];
    value = g.mult(value, s.inverse ? g.inv(x) : x);
  }
  return value;
}

// first satisfying tuple in lexicographic order, or empty
inline std::vector<qrg::Index> brute_solve(
    const qrg::FiniteGroup& g, int m,
    const std::vector<std::pair<qrg::Word, qrg::Subset>>& constraints) {
  std::vector<qrg::Index> tuple(m, 0);
  while (true) {
    bool ok = true;
    for (const auto& [word, set] : constraints)
      if (!set.test(eval_word(g, word, tuple))) {
        ok = false;
        break;
      }
    if (ok) return tuple;
    int pos = m - 1;
    while (pos >= 0 && ++tuple[pos] == g.order()) tuple[pos--] = 0;
    if (pos < 0) return {};
  }
}

// every product trouble a new element could cause, checked by plain scans
inline bool can_add(const qrg::FiniteGroup& g, const std::vector<qrg::Index>& cur, qrg::Index x) {
  auto inset = [&](qrg::Index v) {
    return v == x || std::find(cur.begin(), cur.end(), v) != cur.end();
  };
  if (inset(g.mult(x, x))) return false;
  for (qrg::Index a : cur)
    if (inset(g.mult(a, x)) || inset(g.mult(x, a))) return false;
  for (qrg::Index a : cur)
    for (qrg::Index b : cur)
      if (g.mult(a, b) == x) return false;
  return true;
}

// exhaustive search, exclude-first, with only the remaining-count cut
inline void product_free_dfs(const qrg::FiniteGroup& g, std::vector<qrg::Index>& cur,
                             qrg::Index next, std::vector<qrg::Index>& best) {
  if (next == g.order()) {
    if (cur.size() > best.size()) best = cur;
    return;
  }
  if (cur.size() + static_cast<std::size_t>(g.order() - next) <= best.size()) return;
  product_free_dfs(g, cur, next + 1, best);
  if (can_add(g, cur, next)) {
    cur.push_back(next);
    product_free_dfs(g, cur, next + 1, best);
    cur.pop_back();
  }
}

inline std::vector<qrg::Index> max_product_free(const qrg::FiniteGroup& g) {
  std::vector<qrg::Index> cur, best;
  product_free_dfs(g, cur, 0, best);
  return best;
}

template <class Fn>
inline std::string error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const qrg::Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace oracle
