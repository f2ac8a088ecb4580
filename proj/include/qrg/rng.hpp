#pragma once

#include <cstdint>
#include <vector>

namespace qrg {

// splitmix64 generator; all randomized routines in the library draw from this
// so that a fixed seed reproduces identical behaviour across runs.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n > 0; rejection keeps it unbiased
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Per-trial seed derivation: trial t of master seed s uses the splitmix
// finalizer applied to s + (t+1)*golden-ratio increment.  Documented so that
// external tools can reproduce the per-trial streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  SplitMix64 g(master + (trial + 1) * 0x9e3779b97f4a7c15ULL);
  return g.next();
}

template <class T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace qrg
