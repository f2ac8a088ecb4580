#include "qrg/productfree.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_set>
#include <vector>

#include "qrg/error.hpp"

namespace qrg {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 w : kWitnesses)
    if (n % w == 0) return n == w;
  u64 d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  for (u64 w : kWitnesses) {
    u64 x = pow_mod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int t = 1; t < s; ++t) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<long long> widen(const std::vector<Index>& v) {
  return std::vector<long long>(v.begin(), v.end());
}

struct ExactState {
  Index n = 0;
  std::vector<std::uint8_t> prod;  // n*n multiplication table
  std::vector<Index> cand;
  std::uint32_t best_mask = 0;
  int best = 0;
  std::uint64_t nodes = 0;
};

// set and prods stay disjoint; prods holds every pairwise product of set
void exact_dfs(ExactState& st, std::size_t idx, std::uint32_t set, std::uint32_t prods,
               int count) {
  ++st.nodes;
  if (count > st.best) {
    st.best = count;
    st.best_mask = set;
  }
  if (idx == st.cand.size()) return;
  if (count + static_cast<int>(st.cand.size() - idx) <= st.best) return;
  Index x = st.cand[idx];
  std::uint32_t xbit = 1u << x;
  if (!(prods & xbit)) {
    std::uint32_t fresh = 1u << st.prod[static_cast<std::size_t>(x) * st.n + x];
    for (std::uint32_t rest = set; rest;) {
      Index a = std::countr_zero(rest);
      rest &= rest - 1;
      fresh |= 1u << st.prod[static_cast<std::size_t>(a) * st.n + x];
      fresh |= 1u << st.prod[static_cast<std::size_t>(x) * st.n + a];
    }
    if (!(fresh & (set | xbit))) exact_dfs(st, idx + 1, set | xbit, prods | fresh, count + 1);
  }
  exact_dfs(st, idx + 1, set, prods, count);
}

struct TaggedVector {
  Index element = 0;
  std::complex<double> eigenvalue;
  Eigen::VectorXcd vec;
};

// One cycle of length >= 2 carries the whole vector; the eigenvalue is the
// lexicographically (Re, Im) smallest root of unity over all cycles, which for
// a non-identity permutation always has negative real part.
TaggedVector tag_permutation(const FiniteGroup& group, Index x, int degree) {
  std::vector<Index> p = group.permutation_of(x);
  std::vector<char> used(degree, 0);
  double best_re = 2.0;
  double best_im = 2.0;
  int best_j = 0;
  std::vector<int> best_cycle;
  for (int s = 0; s < degree; ++s) {
    if (used[s]) continue;
    std::vector<int> cycle;
    int t = s;
    do {
      used[t] = 1;
      cycle.push_back(t);
      t = p[t];
    } while (t != s);
    int len = static_cast<int>(cycle.size());
    if (len < 2) continue;
    for (int j = 1; j < len; ++j) {
      double ang = 2.0 * std::numbers::pi * j / len;
      double re = std::cos(ang);
      double im = std::sin(ang);
      if (re < best_re || (re == best_re && im < best_im)) {
        best_re = re;
        best_im = im;
        best_j = j;
        best_cycle = cycle;
      }
    }
  }
  TaggedVector out;
  out.element = x;
  int len = static_cast<int>(best_cycle.size());
  out.eigenvalue = {best_re, best_im};
  out.vec = Eigen::VectorXcd::Zero(degree);
  double scale = 1.0 / std::sqrt(static_cast<double>(len));
  for (int t = 0; t < len; ++t)
    out.vec[best_cycle[t]] = std::polar(scale, -2.0 * std::numbers::pi * best_j * t / len);
  return out;
}

}  // namespace

bool is_product_free(const FiniteGroup& group, const Subset& a) {
  std::vector<Index> elems = a.elements();
  for (Index x : elems)
    for (Index y : elems)
      if (a.test(group.mult(x, y))) return false;
  return true;
}

bool is_sum_free(const std::vector<long long>& xs) {
  std::unordered_set<long long> in(xs.begin(), xs.end());
  for (long long x : xs)
    for (long long y : xs) {
      __int128 s = static_cast<__int128>(x) + y;
      if (s < std::numeric_limits<long long>::min() || s > std::numeric_limits<long long>::max())
        continue;
      if (in.count(static_cast<long long>(s))) return false;
    }
  return true;
}

std::vector<long long> erdos_sum_free(const std::vector<long long>& xs) {
  if (xs.empty()) fail("bad-input", "empty integer set");
  std::vector<long long> vals;
  std::unordered_set<long long> seen;
  u64 max_abs = 0;
  for (long long x : xs) {
    if (x == 0) fail("bad-input", "integer set must not contain 0");
    if (!seen.insert(x).second) continue;
    vals.push_back(x);
    u64 a = x < 0 ? 0 - static_cast<u64>(x) : static_cast<u64>(x);
    max_abs = std::max(max_abs, a);
  }
  if (max_abs > 3'000'000'000'000'000'000ULL)
    fail("cap-exceeded", "integer magnitudes beyond 3e18");

  u64 p = 3 * max_abs + 1;
  while (!is_prime_u64(p)) ++p;
  // middle third (p/3, 2p/3); the endpoints are never integers for p prime > 3
  u64 lo = p / 3 + 1;
  u64 hi = static_cast<u64>(static_cast<u128>(p) * 2 / 3);
  std::size_t need = (vals.size() + 2) / 3;

  std::vector<u64> residue(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    long long r = vals[i] % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    residue[i] = static_cast<u64>(r);
  }
  for (u64 mult = 1; mult < p; ++mult) {
    std::vector<long long> chosen;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      u64 y = mul_mod(mult, residue[i], p);
      if (y >= lo && y <= hi) chosen.push_back(vals[i]);
    }
    if (chosen.size() >= need) return chosen;
  }
  fail("productfree-defect", "no dilation reached the middle third bound");
}

SearchResult max_product_free_exact(const FiniteGroup& group) {
  Index n = group.order();
  if (n > 28) fail("cap-exceeded", "exact search handles order <= 28");
  ExactState st;
  st.n = n;
  st.prod.resize(static_cast<std::size_t>(n) * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      st.prod[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint8_t>(group.mult(a, b));
  for (Index x = 0; x < n; ++x)
    if (x != group.identity()) st.cand.push_back(x);
  exact_dfs(st, 0, 0, 0, 0);

  SearchResult out;
  out.method = "exact";
  Subset set(n);
  for (std::uint32_t rest = st.best_mask; rest;) {
    Index x = std::countr_zero(rest);
    rest &= rest - 1;
    set.set(x);
  }
  out.elements = widen(set.elements());
  out.size = set.size();
  out.optimal = true;
  out.nodes_explored = st.nodes;
  out.verified = is_product_free(group, set);
  return out;
}

SearchResult coset_product_free(const FiniteGroup& group, const std::vector<Index>& generators) {
  std::vector<Index> closure = subgroup_closure(group, generators);
  Subset h = Subset::of(group.order(), closure);
  if (h.size() == group.order()) fail("bad-input", "generators span the whole group");
  Index g = 0;
  while (h.test(g)) ++g;
  Subset coset = left_translate(group, g, h);

  SearchResult out;
  out.method = "coset";
  out.elements = widen(coset.elements());
  out.size = coset.size();
  out.candidate_pool = h.size();
  out.verified = is_product_free(group, coset);
  return out;
}

SearchResult rep_cluster_product_free(const FiniteGroup& group, double delta) {
  if (group.kind() != GroupKind::symmetric && group.kind() != GroupKind::alternating)
    fail("bad-input", "construction needs a symmetric or alternating group");
  if (!(delta > 0.0 && delta < 0.1)) fail("bad-input", "delta must lie in (0, 1/10)");
  int degree = group.permutation_degree();
  int k = degree - 1;  // dimension of the zero-sum block of the natural action
  Index n = group.order();

  // trace cut: fixed points - 1 <= k/2 (the identity never qualifies)
  std::vector<TaggedVector> pool;
  for (Index x = 0; x < n; ++x) {
    std::vector<Index> p = group.permutation_of(x);
    int fixed = 0;
    for (int t = 0; t < degree; ++t)
      if (p[t] == t) ++fixed;
    if (2 * (fixed - 1) <= k) pool.push_back(tag_permutation(group, x, degree));
  }

  // greedy clusters with seed radii (delta, delta/2), so members sit pairwise
  // within (2*delta, delta)
  struct Cluster {
    std::size_t seed;
    std::vector<Index> members;
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    bool placed = false;
    for (Cluster& c : clusters) {
      const TaggedVector& s = pool[c.seed];
      if (std::abs(pool[i].eigenvalue - s.eigenvalue) <= delta / 2 &&
          (pool[i].vec - s.vec).norm() <= delta) {
        c.members.push_back(pool[i].element);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({i, {pool[i].element}});
  }

  std::size_t largest = 0;
  for (std::size_t c = 1; c < clusters.size(); ++c)
    if (clusters[c].members.size() > clusters[largest].members.size()) largest = c;

  SearchResult out;
  out.method = "rep-cluster";
  out.candidate_pool = static_cast<Index>(pool.size());
  out.cluster_count = static_cast<Index>(clusters.size());
  Subset set(n);
  if (!clusters.empty())
    for (Index x : clusters[largest].members) set.set(x);
  out.elements = widen(set.elements());
  out.size = set.size();
  out.verified = is_product_free(group, set);
  return out;
}

}  // namespace qrg
