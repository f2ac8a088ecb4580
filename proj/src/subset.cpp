#include "qrg/subset.hpp"

#include <bit>
#include <numeric>

#include "qrg/error.hpp"
#include "qrg/rng.hpp"

namespace qrg {

Subset::Subset(Index universe) : n_(universe), bits_((universe + 63) / 64, 0) {
  if (universe < 0) fail("bad-input", "negative universe size");
}

Subset Subset::full(Index universe) {
  Subset s(universe);
  for (Index i = 0; i < universe; ++i) s.bits_[i >> 6] |= 1ULL << (i & 63);
  s.card_ = universe;
  return s;
}

Subset Subset::of(Index universe, std::span<const Index> elements) {
  Subset s(universe);
  for (Index i : elements) s.set(i);
  return s;
}

void Subset::set(Index i) {
  if (i < 0 || i >= n_) fail("bad-element", "subset element out of range");
  std::uint64_t mask = 1ULL << (i & 63);
  if (!(bits_[i >> 6] & mask)) {
    bits_[i >> 6] |= mask;
    ++card_;
  }
}

void Subset::reset(Index i) {
  if (i < 0 || i >= n_) fail("bad-element", "subset element out of range");
  std::uint64_t mask = 1ULL << (i & 63);
  if (bits_[i >> 6] & mask) {
    bits_[i >> 6] &= ~mask;
    --card_;
  }
}

std::vector<Index> Subset::elements() const {
  std::vector<Index> out;
  out.reserve(card_);
  for_each([&](Index i) { out.push_back(i); });
  return out;
}

Subset Subset::intersect(const Subset& other) const {
  if (n_ != other.n_) fail("bad-input", "subset universes differ");
  Subset s(n_);
  Index card = 0;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    s.bits_[w] = bits_[w] & other.bits_[w];
    card += std::popcount(s.bits_[w]);
  }
  s.card_ = card;
  return s;
}

Index Subset::intersect_count(const Subset& other) const {
  if (n_ != other.n_) fail("bad-input", "subset universes differ");
  Index card = 0;
  for (std::size_t w = 0; w < bits_.size(); ++w) card += std::popcount(bits_[w] & other.bits_[w]);
  return card;
}

Subset Subset::unite(const Subset& other) const {
  if (n_ != other.n_) fail("bad-input", "subset universes differ");
  Subset s(n_);
  Index card = 0;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    s.bits_[w] = bits_[w] | other.bits_[w];
    card += std::popcount(s.bits_[w]);
  }
  s.card_ = card;
  return s;
}

Subset Subset::complement() const {
  Subset s(n_);
  for (Index i = 0; i < n_; ++i)
    if (!test(i)) s.set(i);
  return s;
}

Subset left_translate(const FiniteGroup& group, Index g, const Subset& b) {
  Subset s(group.order());
  b.for_each([&](Index x) { s.set(group.mult(g, x)); });
  return s;
}

Subset right_translate(const FiniteGroup& group, const Subset& b, Index g) {
  Subset s(group.order());
  b.for_each([&](Index x) { s.set(group.mult(x, g)); });
  return s;
}

Subset inverse_set(const FiniteGroup& group, const Subset& b) {
  Subset s(group.order());
  b.for_each([&](Index x) { s.set(group.inv(x)); });
  return s;
}

Subset random_subset(Index universe, double density, SplitMix64& rng) {
  if (density < 0.0 || density > 1.0) fail("bad-input", "density outside [0,1]");
  Subset s(universe);
  for (Index i = 0; i < universe; ++i)
    if (rng.uniform() < density) s.set(i);
  return s;
}

Subset random_subset_of_size(Index universe, Index size, SplitMix64& rng) {
  if (size < 0 || size > universe) fail("bad-input", "subset size outside [0,n]");
  std::vector<Index> order(universe);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  Subset s(universe);
  for (Index i = 0; i < size; ++i) s.set(order[i]);
  return s;
}

}  // namespace qrg
