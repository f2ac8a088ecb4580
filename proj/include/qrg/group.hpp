#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qrg {

using Index = std::int32_t;

enum class GroupKind {
  cyclic,
  dihedral,
  symmetric,
  alternating,
  psl2,
  direct_product,
  table,
};

struct GroupOptions {
  // Groups with expensive multiplication cache a full Cayley table when the
  // order stays at or below this cap; above it multiplication is computed.
  Index table_cache_cap = 4096;
};

namespace detail {
class GroupImpl;
}

// Finite group with elements indexed 0..order-1.  Value type; copies share an
// immutable implementation.
class FiniteGroup {
 public:
  Index order() const;
  GroupKind kind() const;
  const std::string& descriptor() const;
  Index identity() const;
  Index mult(Index a, Index b) const;
  Index inv(Index a) const;
  // generating set for catalog kinds; empty for table-backed groups
  const std::vector<Index>& generators() const;
  bool has_cayley_table() const;

  // natural permutation action of sym/alt elements; degree 0 otherwise
  int permutation_degree() const;
  std::vector<Index> permutation_of(Index element) const;

  explicit FiniteGroup(std::shared_ptr<const detail::GroupImpl> impl);

 private:
  std::shared_ptr<const detail::GroupImpl> impl_;
};

// Descriptor grammar:
//   cyclic:n (n>=1) | dihedral:n (n>=3) | sym:n (2<=n<=8) | alt:n (3<=n<=8) |
//   psl2:q (odd prime 5<=q<=199) | product:<desc>,<desc> | table:<path>
FiniteGroup make_group(std::string_view descriptor, const GroupOptions& options = {});

// Builds a group from an explicit Cayley table (row i holds mult(i, j)).
// Validates Latin-square rows/columns, identity, inverses, associativity
// (exhaustive for n <= 512, at least 1e5 fixed-seed random triples otherwise).
FiniteGroup make_group_from_table(const std::vector<std::vector<Index>>& table,
                                  const std::string& descriptor);

// Exchange format: first line the order n, then n rows of n space separated
// element indices, row i listing mult(i, j) for j = 0..n-1.
void export_cayley_table(const FiniteGroup& group, std::ostream& out);
FiniteGroup import_cayley_table(std::istream& in, const std::string& descriptor);

struct ConjugacyClasses {
  // classes ordered by least member index; members sorted ascending
  std::vector<std::vector<Index>> classes;
  std::vector<Index> class_of;     // element index -> class id
  Index identity_class = 0;
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& group, Index order_cap = 5000);

// Closure of the generated subgroup; always contains the identity.
std::vector<Index> subgroup_closure(const FiniteGroup& group, std::span<const Index> generators);

// Full group-axiom check: identity, inverses, associativity.  Exhaustive for
// n <= 512, else `samples` fixed-seed random triples.  Throws on violation.
void check_group_axioms(const FiniteGroup& group, std::int64_t samples = 100000);

}  // namespace qrg
