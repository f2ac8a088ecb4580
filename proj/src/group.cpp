#include "qrg/group.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qrg/error.hpp"
#include "qrg/rng.hpp"

namespace qrg {
namespace detail {

class GroupImpl {
 public:
  virtual ~GroupImpl() = default;

  Index order = 0;
  Index identity = 0;
  GroupKind kind = GroupKind::table;
  std::string descriptor;
  std::vector<Index> generators;
  std::vector<Index> table;  // n*n flattened, empty when not cached
  std::vector<Index> invs;   // n entries

  virtual Index mult_rule(Index a, Index b) const = 0;
  virtual Index inv_rule(Index a) const = 0;

  virtual int permutation_degree() const { return 0; }
  virtual std::vector<Index> permutation_of(Index) const {
    fail("bad-input", "group elements are not permutations");
  }

  Index mult(Index a, Index b) const {
    return table.empty() ? mult_rule(a, b) : table[static_cast<std::size_t>(a) * order + b];
  }

  void finalize(bool cache_table, Index cache_cap) {
    invs.resize(order);
    for (Index i = 0; i < order; ++i) invs[i] = inv_rule(i);
    if (cache_table && order <= cache_cap && table.empty()) {
      table.resize(static_cast<std::size_t>(order) * order);
      for (Index a = 0; a < order; ++a)
        for (Index b = 0; b < order; ++b)
          table[static_cast<std::size_t>(a) * order + b] = mult_rule(a, b);
    }
  }
};

namespace {

class CyclicImpl final : public GroupImpl {
 public:
  explicit CyclicImpl(Index n) {
    order = n;
    kind = GroupKind::cyclic;
    descriptor = "cyclic:" + std::to_string(n);
    identity = 0;
    if (n >= 2) generators = {1};
  }
  Index mult_rule(Index a, Index b) const override { return (a + b) % order; }
  Index inv_rule(Index a) const override { return (order - a) % order; }
};

// Elements 0..n-1 are rotations r^i, n..2n-1 are reflections s*r^i.
class DihedralImpl final : public GroupImpl {
 public:
  explicit DihedralImpl(Index n) : n_(n) {
    order = 2 * n;
    kind = GroupKind::dihedral;
    descriptor = "dihedral:" + std::to_string(n);
    identity = 0;
    generators = {1, n};
  }
  Index mult_rule(Index a, Index b) const override {
    bool ra = a < n_, rb = b < n_;
    Index i = ra ? a : a - n_, j = rb ? b : b - n_;
    if (ra && rb) return (i + j) % n_;
    if (ra && !rb) return n_ + (j - i + n_) % n_;  // r^i s r^j = s r^{j-i}
    if (!ra && rb) return n_ + (i + j) % n_;       // s r^i r^j = s r^{i+j}
    return (j - i + n_) % n_;                      // s r^i s r^j = r^{j-i}
  }
  Index inv_rule(Index a) const override {
    if (a < n_) return (n_ - a) % n_;
    return a;  // reflections are involutions
  }

 private:
  Index n_;
};

std::uint64_t pack_perm(const std::array<std::uint8_t, 8>& w) {
  std::uint64_t key = 0;
  for (int t = 0; t < 8; ++t) key = (key << 8) | w[t];
  return key;
}

bool even_permutation(const std::array<std::uint8_t, 8>& w, int degree) {
  int inversions = 0;
  for (int i = 0; i < degree; ++i)
    for (int j = i + 1; j < degree; ++j)
      if (w[i] > w[j]) ++inversions;
  return inversions % 2 == 0;
}

// Permutations of {0..degree-1} in lexicographic order; words compose as
// functions, (p*q)(t) = p(q(t)).
class PermImpl final : public GroupImpl {
 public:
  PermImpl(int degree, bool even_only) : degree_(degree) {
    kind = even_only ? GroupKind::alternating : GroupKind::symmetric;
    descriptor = (even_only ? "alt:" : "sym:") + std::to_string(degree);
    std::array<std::uint8_t, 8> w{};
    for (int t = 0; t < 8; ++t) w[t] = static_cast<std::uint8_t>(t);
    std::vector<std::uint8_t> v(w.begin(), w.begin() + degree);
    do {
      std::array<std::uint8_t, 8> cur{};
      std::copy(v.begin(), v.end(), cur.begin());
      for (int t = degree; t < 8; ++t) cur[t] = static_cast<std::uint8_t>(t);
      if (!even_only || even_permutation(cur, degree)) {
        words_.push_back(cur);
        keys_.push_back(pack_perm(cur));
      }
    } while (std::next_permutation(v.begin(), v.end()));
    order = static_cast<Index>(words_.size());
    identity = 0;  // identity word is lexicographically least

    if (!even_only) {
      generators = {rank(transposition()), rank(full_cycle(0, degree))};
    } else if (degree == 3) {
      generators = {rank(three_cycle())};
    } else {
      generators = {rank(three_cycle()),
                    degree % 2 == 1 ? rank(full_cycle(0, degree)) : rank(full_cycle(1, degree - 1))};
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  }

  Index mult_rule(Index a, Index b) const override {
    const auto& p = words_[a];
    const auto& q = words_[b];
    std::array<std::uint8_t, 8> c{};
    for (int t = 0; t < 8; ++t) c[t] = p[q[t]];
    return rank(c);
  }

  Index inv_rule(Index a) const override {
    const auto& p = words_[a];
    std::array<std::uint8_t, 8> c{};
    for (int t = 0; t < 8; ++t) c[p[t]] = static_cast<std::uint8_t>(t);
    return rank(c);
  }

  int permutation_degree() const override { return degree_; }
  std::vector<Index> permutation_of(Index a) const override {
    const auto& p = words_[a];
    return std::vector<Index>(p.begin(), p.begin() + degree_);
  }

 private:
  Index rank(const std::array<std::uint8_t, 8>& w) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), pack_perm(w));
    return static_cast<Index>(it - keys_.begin());
  }

  std::array<std::uint8_t, 8> transposition() const {
    std::array<std::uint8_t, 8> w{};
    for (int t = 0; t < 8; ++t) w[t] = static_cast<std::uint8_t>(t);
    std::swap(w[0], w[1]);
    return w;
  }
  std::array<std::uint8_t, 8> three_cycle() const {
    std::array<std::uint8_t, 8> w{};
    for (int t = 0; t < 8; ++t) w[t] = static_cast<std::uint8_t>(t);
    w[0] = 1; w[1] = 2; w[2] = 0;
    return w;
  }
  std::array<std::uint8_t, 8> full_cycle(int lo, int len) const {
    std::array<std::uint8_t, 8> w{};
    for (int t = 0; t < 8; ++t) w[t] = static_cast<std::uint8_t>(t);
    for (int t = 0; t < len; ++t) w[lo + t] = static_cast<std::uint8_t>(lo + (t + 1) % len);
    return w;
  }

  int degree_;
  std::vector<std::array<std::uint8_t, 8>> words_;
  std::vector<std::uint64_t> keys_;
};

Index mod_pow(std::int64_t base, std::int64_t exp, Index m) {
  std::int64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = r * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return static_cast<Index>(r);
}

// Elements are determinant-1 matrices over F_q modulo sign; the canonical
// representative of {M, -M} has its first nonzero entry (row-major) in
// {1..(q-1)/2}.  Indexing is lexicographic on (a, b, c, d).
class Psl2Impl final : public GroupImpl {
 public:
  explicit Psl2Impl(Index q) : q_(q), half_((q - 1) / 2) {
    kind = GroupKind::psl2;
    descriptor = "psl2:" + std::to_string(q);

    for (Index a = 0; a < q; ++a) {
      if (a == 0) {
        for (Index b = 1; b < q; ++b) {
          Index c = (q - mod_pow(b, q - 2, q)) % q;
          for (Index d = 0; d < q; ++d) keys_.push_back(canonical_key(a, b, c, d));
        }
      } else {
        Index ainv = mod_pow(a, q - 2, q);
        for (Index b = 0; b < q; ++b)
          for (Index c = 0; c < q; ++c) {
            Index d = static_cast<Index>(static_cast<std::int64_t>(1 + b * c) % q * ainv % q);
            keys_.push_back(canonical_key(a, b, c, d));
          }
      }
    }
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
    order = static_cast<Index>(keys_.size());

    ea_.resize(order); eb_.resize(order); ec_.resize(order); ed_.resize(order);
    for (Index i = 0; i < order; ++i) {
      std::uint32_t k = keys_[i];
      ed_[i] = static_cast<std::uint8_t>(k % q); k /= q;
      ec_[i] = static_cast<std::uint8_t>(k % q); k /= q;
      eb_[i] = static_cast<std::uint8_t>(k % q); k /= q;
      ea_[i] = static_cast<std::uint8_t>(k);
    }
    identity = rank(canonical_key(1, 0, 0, 1));
    generators = {rank(canonical_key(1, 1, 0, 1)), rank(canonical_key(0, q - 1, 1, 0))};
    std::sort(generators.begin(), generators.end());
  }

  Index mult_rule(Index i, Index j) const override {
    std::int64_t a1 = ea_[i], b1 = eb_[i], c1 = ec_[i], d1 = ed_[i];
    std::int64_t a2 = ea_[j], b2 = eb_[j], c2 = ec_[j], d2 = ed_[j];
    return rank(canonical_key(static_cast<Index>((a1 * a2 + b1 * c2) % q_),
                              static_cast<Index>((a1 * b2 + b1 * d2) % q_),
                              static_cast<Index>((c1 * a2 + d1 * c2) % q_),
                              static_cast<Index>((c1 * b2 + d1 * d2) % q_)));
  }

  Index inv_rule(Index i) const override {
    Index a = ea_[i], b = eb_[i], c = ec_[i], d = ed_[i];
    return rank(canonical_key(d, (q_ - b) % q_, (q_ - c) % q_, a));
  }

 private:
  std::uint32_t canonical_key(Index a, Index b, Index c, Index d) const {
    Index first = a != 0 ? a : b != 0 ? b : c != 0 ? c : d;
    if (first > half_) {
      a = (q_ - a) % q_; b = (q_ - b) % q_; c = (q_ - c) % q_; d = (q_ - d) % q_;
    }
    return static_cast<std::uint32_t>(((static_cast<std::uint64_t>(a) * q_ + b) * q_ + c) * q_ + d);
  }

  Index rank(std::uint32_t key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    return static_cast<Index>(it - keys_.begin());
  }

  Index q_, half_;
  std::vector<std::uint32_t> keys_;
  std::vector<std::uint8_t> ea_, eb_, ec_, ed_;
};

// Index (i1, i2) -> i1 * order2 + i2.
class ProductImpl final : public GroupImpl {
 public:
  ProductImpl(FiniteGroup g1, FiniteGroup g2) : g1_(std::move(g1)), g2_(std::move(g2)) {
    kind = GroupKind::direct_product;
    descriptor = "product:" + g1_.descriptor() + "," + g2_.descriptor();
    n2_ = g2_.order();
    order = g1_.order() * n2_;
    identity = g1_.identity() * n2_ + g2_.identity();
    for (Index g : g1_.generators()) generators.push_back(g * n2_ + g2_.identity());
    for (Index h : g2_.generators()) generators.push_back(g1_.identity() * n2_ + h);
  }
  Index mult_rule(Index a, Index b) const override {
    return g1_.mult(a / n2_, b / n2_) * n2_ + g2_.mult(a % n2_, b % n2_);
  }
  Index inv_rule(Index a) const override {
    return g1_.inv(a / n2_) * n2_ + g2_.inv(a % n2_);
  }

 private:
  FiniteGroup g1_, g2_;
  Index n2_ = 0;
};

class TableImpl final : public GroupImpl {
 public:
  TableImpl(std::vector<Index> flat, Index n, Index id, const std::string& desc) {
    order = n;
    identity = id;
    kind = GroupKind::table;
    descriptor = desc;
    table = std::move(flat);
  }
  Index mult_rule(Index a, Index b) const override {
    return table[static_cast<std::size_t>(a) * order + b];
  }
  Index inv_rule(Index a) const override {
    for (Index b = 0; b < order; ++b)
      if (mult_rule(a, b) == identity) return b;
    fail("malformed-table", "element without inverse");
  }
};

bool is_odd_prime(Index q) {
  if (q < 3 || q % 2 == 0) return false;
  for (Index d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

Index parse_number(std::string_view text, const char* what) {
  Index value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail("bad-descriptor", std::string("expected a number for ") + what + ", got '" +
                               std::string(text) + "'");
  return value;
}

FiniteGroup parse_descriptor(std::string_view& rest, const GroupOptions& options, bool nested);

FiniteGroup make_atom(std::string_view kind, std::string_view arg, const GroupOptions& options) {
  std::shared_ptr<GroupImpl> impl;
  bool expensive = false;
  if (kind == "cyclic") {
    Index n = parse_number(arg, "cyclic order");
    if (n < 1) fail("bad-descriptor", "cyclic order must be >= 1");
    impl = std::make_shared<CyclicImpl>(n);
  } else if (kind == "dihedral") {
    Index n = parse_number(arg, "dihedral parameter");
    if (n < 3) fail("bad-descriptor", "dihedral parameter must be >= 3");
    impl = std::make_shared<DihedralImpl>(n);
  } else if (kind == "sym") {
    Index n = parse_number(arg, "symmetric degree");
    if (n < 2 || n > 8) fail("bad-descriptor", "symmetric degree must be in 2..8");
    impl = std::make_shared<PermImpl>(n, false);
    expensive = true;
  } else if (kind == "alt") {
    Index n = parse_number(arg, "alternating degree");
    if (n < 3 || n > 8) fail("bad-descriptor", "alternating degree must be in 3..8");
    impl = std::make_shared<PermImpl>(n, true);
    expensive = true;
  } else if (kind == "psl2") {
    Index q = parse_number(arg, "psl2 field size");
    if (q < 5 || q > 199 || !is_odd_prime(q))
      fail("bad-descriptor", "psl2 parameter must be an odd prime in 5..199");
    impl = std::make_shared<Psl2Impl>(q);
    expensive = true;
  } else {
    fail("bad-descriptor", "unknown group kind '" + std::string(kind) + "'");
  }
  impl->finalize(expensive, options.table_cache_cap);
  return FiniteGroup(impl);
}

FiniteGroup parse_descriptor(std::string_view& rest, const GroupOptions& options, bool nested) {
  auto starts = [&](std::string_view prefix) {
    if (rest.substr(0, prefix.size()) != prefix) return false;
    rest.remove_prefix(prefix.size());
    return true;
  };
  if (starts("product:")) {
    FiniteGroup g1 = parse_descriptor(rest, options, true);
    if (rest.empty() || rest[0] != ',')
      fail("bad-descriptor", "product descriptor needs two comma separated parts");
    rest.remove_prefix(1);
    FiniteGroup g2 = parse_descriptor(rest, options, true);
    auto impl = std::make_shared<ProductImpl>(g1, g2);
    impl->finalize(true, options.table_cache_cap);
    return FiniteGroup(impl);
  }
  if (starts("table:")) {
    // nested table paths end at the next comma; top level consumes the rest
    std::size_t end = nested ? std::min(rest.find(','), rest.size()) : rest.size();
    std::string path(rest.substr(0, end));
    rest.remove_prefix(end);
    std::ifstream in(path);
    if (!in) fail("io-error", "cannot open Cayley table file '" + path + "'");
    return import_cayley_table(in, "table:" + path);
  }
  std::size_t colon = rest.find(':');
  if (colon == std::string_view::npos)
    fail("bad-descriptor", "descriptor must look like kind:arg");
  std::string_view kind = rest.substr(0, colon);
  std::string_view arg_all = rest.substr(colon + 1);
  std::size_t end = nested ? std::min(arg_all.find(','), arg_all.size()) : arg_all.size();
  std::string_view arg = arg_all.substr(0, end);
  rest.remove_prefix(colon + 1 + end);
  return make_atom(kind, arg, options);
}

}  // namespace
}  // namespace detail

FiniteGroup::FiniteGroup(std::shared_ptr<const detail::GroupImpl> impl) : impl_(std::move(impl)) {}

Index FiniteGroup::order() const { return impl_->order; }
GroupKind FiniteGroup::kind() const { return impl_->kind; }
const std::string& FiniteGroup::descriptor() const { return impl_->descriptor; }
Index FiniteGroup::identity() const { return impl_->identity; }
const std::vector<Index>& FiniteGroup::generators() const { return impl_->generators; }
bool FiniteGroup::has_cayley_table() const { return !impl_->table.empty(); }

Index FiniteGroup::mult(Index a, Index b) const {
  if (a < 0 || a >= impl_->order || b < 0 || b >= impl_->order)
    fail("bad-element", "element index out of range");
  return impl_->mult(a, b);
}

Index FiniteGroup::inv(Index a) const {
  if (a < 0 || a >= impl_->order) fail("bad-element", "element index out of range");
  return impl_->invs[a];
}

int FiniteGroup::permutation_degree() const { return impl_->permutation_degree(); }

std::vector<Index> FiniteGroup::permutation_of(Index element) const {
  if (element < 0 || element >= impl_->order) fail("bad-element", "element index out of range");
  return impl_->permutation_of(element);
}

FiniteGroup make_group(std::string_view descriptor, const GroupOptions& options) {
  std::string_view rest = descriptor;
  FiniteGroup g = detail::parse_descriptor(rest, options, false);
  if (!rest.empty())
    fail("bad-descriptor", "trailing characters in descriptor: '" + std::string(rest) + "'");
  return g;
}

FiniteGroup make_group_from_table(const std::vector<std::vector<Index>>& table,
                                  const std::string& descriptor) {
  Index n = static_cast<Index>(table.size());
  if (n < 1) fail("malformed-table", "empty table");
  std::vector<Index> flat(static_cast<std::size_t>(n) * n);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(table[i].size()) != n)
      fail("malformed-table", "row " + std::to_string(i) + " has wrong length");
    for (Index j = 0; j < n; ++j) {
      Index v = table[i][j];
      if (v < 0 || v >= n) fail("malformed-table", "entry out of range");
      flat[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  // Latin square: rows and columns are permutations
  std::vector<bool> seen(n);
  for (Index i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), false);
    for (Index j = 0; j < n; ++j) {
      Index v = flat[static_cast<std::size_t>(i) * n + j];
      if (seen[v]) fail("malformed-table", "row " + std::to_string(i) + " repeats an entry");
      seen[v] = true;
    }
  }
  for (Index j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), false);
    for (Index i = 0; i < n; ++i) {
      Index v = flat[static_cast<std::size_t>(i) * n + j];
      if (seen[v]) fail("malformed-table", "column " + std::to_string(j) + " repeats an entry");
      seen[v] = true;
    }
  }
  Index id = -1;
  for (Index e = 0; e < n; ++e) {
    bool ok = true;
    for (Index j = 0; j < n && ok; ++j)
      ok = flat[static_cast<std::size_t>(e) * n + j] == j &&
           flat[static_cast<std::size_t>(j) * n + e] == j;
    if (ok) { id = e; break; }
  }
  if (id < 0) fail("malformed-table", "no two-sided identity");

  auto impl = std::make_shared<detail::TableImpl>(std::move(flat), n, id, descriptor);
  impl->finalize(false, 0);
  FiniteGroup g(impl);
  try {
    check_group_axioms(g);
  } catch (const Error& e) {
    fail("malformed-table", e.what());
  }
  return g;
}

void export_cayley_table(const FiniteGroup& group, std::ostream& out) {
  Index n = group.order();
  out << n << '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << group.mult(i, j);
    }
    out << '\n';
  }
}

FiniteGroup import_cayley_table(std::istream& in, const std::string& descriptor) {
  Index n = 0;
  if (!(in >> n) || n < 1) fail("malformed-table", "bad order line");
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (!(in >> table[i][j])) fail("malformed-table", "truncated table");
  return make_group_from_table(table, descriptor);
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& group, Index order_cap) {
  Index n = group.order();
  if (n > order_cap)
    fail("cap-exceeded", "group order " + std::to_string(n) +
                             " exceeds class computation cap " + std::to_string(order_cap));
  std::vector<Index> conjugators = group.generators();
  if (conjugators.empty()) {
    conjugators.resize(n);
    for (Index g = 0; g < n; ++g) conjugators[g] = g;
  }
  std::vector<Index> conj_inv(conjugators.size());
  for (std::size_t t = 0; t < conjugators.size(); ++t) conj_inv[t] = group.inv(conjugators[t]);

  ConjugacyClasses result;
  result.class_of.assign(n, -1);
  for (Index x = 0; x < n; ++x) {
    if (result.class_of[x] >= 0) continue;
    Index id = static_cast<Index>(result.classes.size());
    std::vector<Index> members;
    std::deque<Index> queue{x};
    result.class_of[x] = id;
    while (!queue.empty()) {
      Index y = queue.front();
      queue.pop_front();
      members.push_back(y);
      for (std::size_t t = 0; t < conjugators.size(); ++t) {
        Index z = group.mult(group.mult(conjugators[t], y), conj_inv[t]);
        if (result.class_of[z] < 0) {
          result.class_of[z] = id;
          queue.push_back(z);
        }
      }
    }
    std::sort(members.begin(), members.end());
    result.classes.push_back(std::move(members));
  }
  result.identity_class = result.class_of[group.identity()];
  return result;
}

std::vector<Index> subgroup_closure(const FiniteGroup& group, std::span<const Index> generators) {
  Index n = group.order();
  std::vector<bool> member(n, false);
  std::deque<Index> queue;
  member[group.identity()] = true;
  queue.push_back(group.identity());
  while (!queue.empty()) {
    Index y = queue.front();
    queue.pop_front();
    for (Index g : generators) {
      Index z = group.mult(y, g);
      if (!member[z]) {
        member[z] = true;
        queue.push_back(z);
      }
    }
  }
  std::vector<Index> out;
  for (Index i = 0; i < n; ++i)
    if (member[i]) out.push_back(i);
  return out;
}

void check_group_axioms(const FiniteGroup& group, std::int64_t samples) {
  Index n = group.order();
  Index e = group.identity();
  for (Index x = 0; x < n; ++x) {
    if (group.mult(e, x) != x || group.mult(x, e) != x)
      fail("axiom-violation", "identity fails at element " + std::to_string(x));
    if (group.mult(x, group.inv(x)) != e || group.mult(group.inv(x), x) != e)
      fail("axiom-violation", "inverse fails at element " + std::to_string(x));
  }
  auto check_triple = [&](Index a, Index b, Index c) {
    if (group.mult(group.mult(a, b), c) != group.mult(a, group.mult(b, c)))
      fail("axiom-violation", "associativity fails at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 512) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    SplitMix64 rng(0x9d2c5680u);
    for (std::int64_t t = 0; t < samples; ++t)
      check_triple(static_cast<Index>(rng.below(n)), static_cast<Index>(rng.below(n)),
                   static_cast<Index>(rng.below(n)));
  }
}

}  // namespace qrg
