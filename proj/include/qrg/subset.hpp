#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "qrg/group.hpp"

namespace qrg {

// Subset of a group's index range, stored as a bitset with cached cardinality.
class Subset {
 public:
  Subset() = default;
  explicit Subset(Index universe);

  static Subset full(Index universe);
  static Subset of(Index universe, std::span<const Index> elements);

  Index universe() const { return n_; }
  Index size() const { return card_; }
  double density() const { return n_ == 0 ? 0.0 : static_cast<double>(card_) / n_; }
  bool empty() const { return card_ == 0; }

  bool test(Index i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
  void set(Index i);
  void reset(Index i);

  std::vector<Index> elements() const;

  Subset intersect(const Subset& other) const;
  Index intersect_count(const Subset& other) const;
  Subset unite(const Subset& other) const;
  Subset complement() const;

  bool operator==(const Subset& other) const = default;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        int bit = std::countr_zero(word);
        fn(static_cast<Index>((w << 6) + bit));
        word &= word - 1;
      }
    }
  }

 private:
  Index n_ = 0;
  Index card_ = 0;
  std::vector<std::uint64_t> bits_;
};

// {g*b : b in B}
Subset left_translate(const FiniteGroup& group, Index g, const Subset& b);
// {b*g : b in B}
Subset right_translate(const FiniteGroup& group, const Subset& b, Index g);
// {b^{-1} : b in B}
Subset inverse_set(const FiniteGroup& group, const Subset& b);

struct SplitMix64;

// each element kept independently with probability density
Subset random_subset(Index universe, double density, SplitMix64& rng);
// uniformly random subset of the given cardinality
Subset random_subset_of_size(Index universe, Index size, SplitMix64& rng);

}  // namespace qrg
