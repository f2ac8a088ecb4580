#include "qrg/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "qrg/error.hpp"

namespace qrg {
namespace {

using i64 = std::int64_t;

i64 pow_mod(i64 base, i64 exp, i64 m) {
  i64 r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = r * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return r;
}

i64 inv_mod(i64 a, i64 m) { return pow_mod(a, m - 2, m); }

bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over F_l, ascending coefficients, no trailing zeros.
using Poly = std::vector<i64>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_rem(Poly a, const Poly& b, i64 l) {
  i64 lead = inv_mod(b.back(), l);
  while (a.size() >= b.size()) {
    i64 factor = a.back() * lead % l;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = ((a[shift + i] - factor * b[i]) % l + l) % l;
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_mul_rem(const Poly& a, const Poly& b, const Poly& mod, i64 l) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % l;
  }
  trim(c);
  return poly_rem(std::move(c), mod, l);
}

// (x + shift)^exp mod (modpoly) over F_l
Poly poly_pow_linear(i64 shift, i64 exp, const Poly& modpoly, i64 l) {
  Poly base = poly_rem({shift % l, 1}, modpoly, l);
  Poly result = poly_rem({1}, modpoly, l);
  while (exp > 0) {
    if (exp & 1) result = poly_mul_rem(result, base, modpoly, l);
    base = poly_mul_rem(base, base, modpoly, l);
    exp >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, i64 l) {
  while (!b.empty()) {
    Poly r = poly_rem(std::move(a), b, l);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    i64 lead = inv_mod(a.back(), l);
    for (i64& c : a) c = c * lead % l;
  }
  return a;
}

using Mat = std::vector<std::vector<i64>>;

// determinant of (x*I - B) evaluated at x over F_l
i64 charpoly_at(const Mat& b, i64 x, i64 l) {
  std::size_t d = b.size();
  Mat m(d, std::vector<i64>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m[i][j] = (((i == j ? x : 0) - b[i][j]) % l + l) % l;
  i64 det = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = (l - det) % l;
    }
    det = det * m[col][col] % l;
    i64 inv = inv_mod(m[col][col], l);
    for (std::size_t row = col + 1; row < d; ++row) {
      if (m[row][col] == 0) continue;
      i64 f = m[row][col] * inv % l;
      for (std::size_t j = col; j < d; ++j) m[row][j] = ((m[row][j] - f * m[col][j]) % l + l) % l;
    }
  }
  return det;
}

// characteristic polynomial via evaluation at d+1 points and interpolation
Poly charpoly(const Mat& b, i64 l) {
  std::size_t d = b.size();
  std::vector<i64> xs(d + 1), ys(d + 1);
  for (std::size_t t = 0; t <= d; ++t) {
    xs[t] = static_cast<i64>(t);
    ys[t] = charpoly_at(b, xs[t], l);
  }
  // master polynomial prod (x - x_t)
  Poly master{1};
  for (i64 x : xs) {
    Poly next(master.size() + 1, 0);
    for (std::size_t i = 0; i < master.size(); ++i) {
      next[i + 1] = (next[i + 1] + master[i]) % l;
      next[i] = (next[i] + master[i] * ((l - x) % l)) % l;
    }
    master = std::move(next);
  }
  Poly result(d + 1, 0);
  for (std::size_t t = 0; t <= d; ++t) {
    // master / (x - x_t) by synthetic division
    Poly quot(master.size() - 1, 0);
    i64 carry = master.back();
    for (std::size_t i = master.size() - 1; i-- > 0;) {
      quot[i] = carry;
      carry = (master[i] + carry * xs[t]) % l;
    }
    i64 denom = 1;
    for (std::size_t u = 0; u <= d; ++u)
      if (u != t) denom = denom * ((xs[t] - xs[u]) % l + l) % l;
    i64 scale = ys[t] * inv_mod(denom, l) % l;
    for (std::size_t i = 0; i < quot.size() && i < result.size(); ++i)
      result[i] = (result[i] + quot[i] * scale) % l;
  }
  trim(result);
  return result;
}

// all roots of a squarefree polynomial that splits into linear factors
void extract_roots(const Poly& s, i64 l, std::vector<i64>& out) {
  if (s.size() <= 1) return;
  if (s.size() == 2) {
    // monic-normalize: root of c0 + c1 x
    out.push_back((l - s[0] * inv_mod(s[1], l) % l) % l);
    return;
  }
  for (i64 shift = 0;; ++shift) {
    if (shift >= l) fail("chartab-defect", "eigenvalue splitting failed to separate roots");
    Poly t = poly_pow_linear(shift, (l - 1) / 2, s, l);
    if (!t.empty()) t[0] = ((t[0] - 1) % l + l) % l;
    else t = {l - 1};
    trim(t);
    Poly g = poly_gcd(t.empty() ? Poly{} : t, s, l);
    if (g.size() > 1 && g.size() < s.size()) {
      extract_roots(g, l, out);
      Poly quotient;
      {
        Poly a = s;
        i64 lead = inv_mod(g.back(), l);
        quotient.assign(a.size() - g.size() + 1, 0);
        while (a.size() >= g.size()) {
          i64 factor = a.back() * lead % l;
          std::size_t sh = a.size() - g.size();
          quotient[sh] = factor;
          for (std::size_t i = 0; i < g.size(); ++i)
            a[sh + i] = ((a[sh + i] - factor * g[i]) % l + l) % l;
          trim(a);
          if (a.empty()) break;
        }
      }
      extract_roots(quotient, l, out);
      return;
    }
  }
}

std::vector<i64> distinct_eigenvalues(const Mat& b, i64 l) {
  Poly p = charpoly(b, l);
  // gcd(x^l - x, p) keeps each distinct root once
  Poly xl = poly_pow_linear(0, l, p, l);  // x^l mod p
  if (xl.size() < 2) xl.resize(2, 0);
  xl[1] = ((xl[1] - 1) % l + l) % l;  // minus x
  trim(xl);
  Poly sf = poly_gcd(xl, p, l);
  std::vector<i64> roots;
  extract_roots(sf, l, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Row-reduced basis over F_l with pivot bookkeeping.
struct Basis {
  std::vector<std::vector<i64>> rows;
  std::vector<int> pivots;
};

Basis row_reduce(std::vector<std::vector<i64>> rows, i64 l) {
  Basis basis;
  std::size_t width = rows.empty() ? 0 : rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    i64 inv = inv_mod(rows[rank][col], l);
    for (std::size_t j = 0; j < width; ++j) rows[rank][j] = rows[rank][j] * inv % l;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      i64 f = rows[r][col];
      for (std::size_t j = 0; j < width; ++j)
        rows[r][j] = ((rows[r][j] - f * rows[rank][j]) % l + l) % l;
    }
    basis.pivots.push_back(static_cast<int>(col));
    ++rank;
  }
  rows.resize(rank);
  basis.rows = std::move(rows);
  return basis;
}

// action of the class matrix restricted to an invariant subspace
Mat restrict_matrix(const Mat& m, const Basis& basis, i64 l) {
  std::size_t d = basis.rows.size();
  std::size_t r = m.size();
  Mat out(d, std::vector<i64>(d, 0));
  for (std::size_t t = 0; t < d; ++t) {
    std::vector<i64> w(r, 0);
    for (std::size_t j = 0; j < r; ++j) {
      i64 acc = 0;
      for (std::size_t k = 0; k < r; ++k) acc = (acc + m[j][k] * basis.rows[t][k]) % l;
      w[j] = acc;
    }
    // coordinates read off at pivot columns, then verified
    std::vector<i64> coords(d);
    for (std::size_t u = 0; u < d; ++u) coords[u] = w[basis.pivots[u]];
    for (std::size_t j = 0; j < r; ++j) {
      i64 acc = 0;
      for (std::size_t u = 0; u < d; ++u) acc = (acc + coords[u] * basis.rows[u][j]) % l;
      if (acc != w[j]) fail("chartab-defect", "subspace not invariant under class matrix");
    }
    for (std::size_t u = 0; u < d; ++u) out[u][t] = coords[u];
  }
  return out;
}

std::vector<std::vector<i64>> kernel_basis(const Mat& m, i64 l) {
  std::size_t d = m.size();
  Basis reduced = row_reduce(m, l);
  std::vector<bool> is_pivot(d, false);
  for (int p : reduced.pivots) is_pivot[p] = true;
  std::vector<std::vector<i64>> kernel;
  for (std::size_t free_col = 0; free_col < d; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<i64> v(d, 0);
    v[free_col] = 1;
    for (std::size_t t = 0; t < reduced.rows.size(); ++t)
      v[reduced.pivots[t]] = (l - reduced.rows[t][free_col] % l) % l;
    kernel.push_back(std::move(v));
  }
  return kernel;
}

i64 element_order(const FiniteGroup& g, Index x) {
  i64 order = 1;
  Index y = x;
  while (y != g.identity()) {
    y = g.mult(y, x);
    ++order;
  }
  return order;
}

// The modulus must exceed 2*sqrt(n) so dimensions lift uniquely, and must
// exceed the class count so charpoly interpolation has enough sample points.
i64 find_modulus(i64 exponent, Index n, int classes, i64 bound) {
  i64 floor_l = std::max<i64>(static_cast<i64>(2.0 * std::sqrt(static_cast<double>(n))),
                              classes);
  for (i64 l = exponent + 1;; l += exponent) {
    if (l > bound)
      fail("no-modulus", "no usable prime below " + std::to_string(bound));
    if (l > floor_l && is_prime(l)) return l;
  }
}

i64 primitive_root(i64 l) {
  std::vector<i64> prime_factors;
  i64 m = l - 1;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  for (i64 g = 2;; ++g) {
    bool ok = true;
    for (i64 p : prime_factors)
      if (pow_mod(g, (l - 1) / p, l) == 1) { ok = false; break; }
    if (ok) return g;
  }
}

}  // namespace

CharacterTable character_table(const FiniteGroup& group, const ChartabOptions& options) {
  Index n = group.order();
  if (n > options.order_cap)
    fail("cap-exceeded", "group order " + std::to_string(n) + " exceeds character table cap " +
                             std::to_string(options.order_cap));
  ConjugacyClasses cls = conjugacy_classes(group, options.order_cap);
  int r = static_cast<int>(cls.classes.size());
  if (r > options.class_cap)
    fail("cap-exceeded", "class count " + std::to_string(r) + " exceeds cap " +
                             std::to_string(options.class_cap));

  CharacterTable out;
  out.group = group.descriptor();
  out.identity_class = cls.identity_class;
  out.representatives.resize(r);
  out.class_sizes.resize(r);
  for (int k = 0; k < r; ++k) {
    out.representatives[k] = cls.classes[k].front();
    out.class_sizes[k] = static_cast<Index>(cls.classes[k].size());
  }

  i64 exponent = 1;
  for (int k = 0; k < r; ++k)
    exponent = std::lcm(exponent, element_order(group, out.representatives[k]));
  out.exponent = exponent;
  i64 l = find_modulus(exponent, n, r, options.modulus_bound);
  out.modulus = l;

  // structure constants: m[i][j][k] = #{x in C_i : x^{-1} z_k in C_j} mod l
  std::vector<Mat> class_matrix(r, Mat(r, std::vector<i64>(r, 0)));
  for (int k = 0; k < r; ++k) {
    Index z = out.representatives[k];
    for (Index x = 0; x < n; ++x) {
      int i = cls.class_of[x];
      int j = cls.class_of[group.mult(group.inv(x), z)];
      class_matrix[i][j][k] = (class_matrix[i][j][k] + 1) % l;
    }
  }

  // simultaneous eigenspace refinement
  std::vector<std::vector<i64>> full(r, std::vector<i64>(r, 0));
  for (int k = 0; k < r; ++k) full[k][k] = 1;
  std::vector<Basis> spaces{row_reduce(std::move(full), l)};
  for (int i = 0; i < r; ++i) {
    if (i == cls.identity_class) continue;
    bool all_split = std::all_of(spaces.begin(), spaces.end(),
                                 [](const Basis& b) { return b.rows.size() == 1; });
    if (all_split) break;
    std::vector<Basis> next;
    for (const Basis& space : spaces) {
      if (space.rows.size() == 1) {
        next.push_back(space);
        continue;
      }
      Mat restricted = restrict_matrix(class_matrix[i], space, l);
      std::vector<i64> roots = distinct_eigenvalues(restricted, l);
      if (roots.size() <= 1) {
        next.push_back(space);
        continue;
      }
      std::size_t covered = 0;
      for (i64 root : roots) {
        Mat shifted = restricted;
        for (std::size_t t = 0; t < shifted.size(); ++t)
          shifted[t][t] = ((shifted[t][t] - root) % l + l) % l;
        std::vector<std::vector<i64>> kernel = kernel_basis(shifted, l);
        std::vector<std::vector<i64>> ambient;
        for (const auto& coords : kernel) {
          std::vector<i64> v(r, 0);
          for (std::size_t u = 0; u < space.rows.size(); ++u)
            for (int j = 0; j < r; ++j) v[j] = (v[j] + coords[u] * space.rows[u][j]) % l;
          ambient.push_back(std::move(v));
        }
        covered += ambient.size();
        next.push_back(row_reduce(std::move(ambient), l));
      }
      if (covered != space.rows.size())
        fail("chartab-defect", "eigenspace dimensions do not add up");
    }
    spaces = std::move(next);
  }
  for (const Basis& space : spaces)
    if (space.rows.size() != 1)
      fail("chartab-defect", "class matrices failed to separate all characters");

  // central character values, normalized at the identity class
  std::vector<std::vector<i64>> omega(r, std::vector<i64>(r));
  for (int s = 0; s < r; ++s) {
    const std::vector<i64>& v = spaces[s].rows[0];
    if (v[cls.identity_class] == 0)
      fail("chartab-defect", "central character vanishes at the identity class");
    i64 scale = inv_mod(v[cls.identity_class], l);
    for (int k = 0; k < r; ++k) omega[s][k] = v[k] * scale % l;
  }

  std::vector<int> inverse_class(r);
  for (int k = 0; k < r; ++k)
    inverse_class[k] = cls.class_of[group.inv(out.representatives[k])];

  // dimensions from the norm relation: d^2 * sum_k w(k) w(k*) / |C_k| = n
  std::vector<int> dims(r);
  std::vector<std::vector<i64>> chi_mod(r, std::vector<i64>(r));
  for (int s = 0; s < r; ++s) {
    i64 sum = 0;
    for (int k = 0; k < r; ++k) {
      i64 term = omega[s][k] * omega[s][inverse_class[k]] % l;
      sum = (sum + term * inv_mod(out.class_sizes[k] % l, l)) % l;
    }
    i64 target = n % l * inv_mod(sum, l) % l;
    int d = 0;
    for (int cand = 1; static_cast<i64>(cand) * cand <= n; ++cand)
      if (static_cast<i64>(cand) * cand % l == target) { d = cand; break; }
    if (d == 0) fail("chartab-defect", "no integer dimension matches the norm relation");
    dims[s] = d;
    for (int k = 0; k < r; ++k)
      chi_mod[s][k] = d % l * omega[s][k] % l * inv_mod(out.class_sizes[k] % l, l) % l;
  }

  // lift through root-of-unity multiplicities: power maps first
  std::vector<std::vector<int>> power_class(r, std::vector<int>(exponent));
  for (int k = 0; k < r; ++k) {
    Index y = group.identity();
    for (i64 t = 0; t < exponent; ++t) {
      power_class[k][t] = cls.class_of[y];
      y = group.mult(y, out.representatives[k]);
    }
  }
  i64 z = pow_mod(primitive_root(l), (l - 1) / exponent, l);
  std::vector<i64> zpow(exponent);
  zpow[0] = 1;
  for (i64 m = 1; m < exponent; ++m) zpow[m] = zpow[m - 1] * z % l;
  std::vector<std::complex<double>> zeta(exponent);
  for (i64 m = 0; m < exponent; ++m) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(exponent);
    zeta[m] = {std::cos(angle), std::sin(angle)};
  }
  i64 e_inv = inv_mod(exponent % l, l);

  Eigen::MatrixXcd table(r, r);
  for (int s = 0; s < r; ++s) {
    for (int k = 0; k < r; ++k) {
      std::complex<double> value = 0.0;
      i64 mult_sum = 0;
      for (i64 m = 0; m < exponent; ++m) {
        i64 acc = 0;
        for (i64 t = 0; t < exponent; ++t) {
          i64 zexp = (exponent - t * m % exponent) % exponent;
          acc = (acc + chi_mod[s][power_class[k][t]] * zpow[zexp]) % l;
        }
        i64 count = acc * e_inv % l;
        if (count > dims[s])
          fail("chartab-defect", "eigenvalue multiplicity exceeds the dimension");
        mult_sum += count;
        if (count) value += static_cast<double>(count) * zeta[m];
      }
      if (mult_sum != dims[s])
        fail("chartab-defect", "eigenvalue multiplicities do not sum to the dimension");
      table(s, k) = value;
    }
  }

  // order rows: trivial character first, then dimension, then value order
  int trivial = -1;
  for (int s = 0; s < r; ++s) {
    bool all_one = true;
    for (int k = 0; k < r && all_one; ++k) all_one = std::abs(table(s, k) - 1.0) < 1e-8;
    if (all_one) { trivial = s; break; }
  }
  if (trivial < 0) fail("chartab-defect", "trivial character missing");
  std::vector<int> row_order(r);
  std::iota(row_order.begin(), row_order.end(), 0);
  std::stable_sort(row_order.begin(), row_order.end(), [&](int a, int b) {
    if (a == trivial || b == trivial) return a == trivial && b != trivial;
    if (dims[a] != dims[b]) return dims[a] < dims[b];
    for (int k = 0; k < r; ++k) {
      double ra = table(a, k).real(), rb = table(b, k).real();
      if (ra != rb) return ra < rb;
      double ia = table(a, k).imag(), ib = table(b, k).imag();
      if (ia != ib) return ia < ib;
    }
    return false;
  });

  out.dims.resize(r);
  out.table.resize(r, r);
  i64 dim_square_sum = 0;
  for (int s = 0; s < r; ++s) {
    out.dims[s] = dims[row_order[s]];
    dim_square_sum += static_cast<i64>(out.dims[s]) * out.dims[s];
    for (int k = 0; k < r; ++k) out.table(s, k) = table(row_order[s], k);
  }
  if (dim_square_sum != n)
    fail("chartab-defect", "squared dimensions do not sum to the group order");
  return out;
}

int min_nontrivial_irrep_dim(const FiniteGroup& group, const ChartabOptions& options) {
  if (group.order() == 1)
    fail("bad-input", "the one-element group has no nontrivial representations");
  CharacterTable ct = character_table(group, options);
  int best = group.order();
  for (std::size_t s = 1; s < ct.dims.size(); ++s) best = std::min(best, ct.dims[s]);
  return best;
}

RepBoundReport verify_rep_bounds(const FiniteGroup& group, const std::string& context,
                                 const ChartabOptions& options) {
  RepBoundReport report;
  report.context = context;
  report.k = min_nontrivial_irrep_dim(group, options);
  if (context == "psl2") {
    if (group.kind() != GroupKind::psl2)
      fail("bad-input", "psl2 context requires a psl2 group");
    const std::string& desc = group.descriptor();
    int q = std::stoi(desc.substr(desc.find(':') + 1));
    report.bound = (q - 1) / 2.0;
  } else if (context == "simple") {
    report.bound = std::sqrt(std::log(static_cast<double>(group.order()))) / 2.0;
  } else {
    fail("bad-input", "unknown context '" + context + "'");
  }
  report.pass = static_cast<double>(report.k) >= report.bound * (1.0 - 1e-9);
  return report;
}

}  // namespace qrg
