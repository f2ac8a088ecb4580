#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrg/group.hpp"
#include "qrg/subset.hpp"

namespace qrg {

// No a, b in the set (a = b allowed) may have a*b in the set.
bool is_product_free(const FiniteGroup& group, const Subset& a);

// Additive counterpart over the integers: no a + b in the list.
bool is_sum_free(const std::vector<long long>& xs);

// Sum-free subset of at least ceil(|X|/3) of the given nonzero integers,
// found by rescaling into the middle third mod a prime.  Duplicates are
// collapsed before the bound applies.
std::vector<long long> erdos_sum_free(const std::vector<long long>& xs);

struct SearchResult {
  std::string method;  // "exact", "coset", "erdos", "rep-cluster"
  std::vector<long long> elements;
  Index size = 0;
  bool verified = false;
  bool optimal = false;              // exact search only
  std::uint64_t nodes_explored = 0;  // exact search only
  Index candidate_pool = 0;  // |H| for coset, low-trace pool for rep-cluster
  Index cluster_count = 0;   // rep-cluster only
};

// Largest product-free subset by branch-and-bound; exact, so the order is
// capped at 28.
SearchResult max_product_free_exact(const FiniteGroup& group);

// Coset g<S> for the smallest g outside the subgroup generated by S.  Fails
// when S generates the whole group.
SearchResult coset_product_free(const FiniteGroup& group, const std::vector<Index>& generators);

// Product-free set in a symmetric or alternating group built from permutations
// of low fixed-point count, clustered by a shared near-eigenvector of the
// natural action whose eigenvalue stays away from 1.  Requires 0 < delta < 1/10.
SearchResult rep_cluster_product_free(const FiniteGroup& group, double delta = 0.05);

}  // namespace qrg
