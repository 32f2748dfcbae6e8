#pragma once

#include <cstdint>
#include <vector>

#include "wittkit/maps.hpp"
#include "wittkit/poset.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

/// Deterministic splitmix64 stream; identical output on every platform, which
/// keeps CLI verify runs byte-reproducible.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int64_t below(int64_t n) { return n <= 1 ? 0 : static_cast<int64_t>(next() % static_cast<uint64_t>(n)); }
  int64_t between(int64_t lo, int64_t hi) { return lo + below(hi - lo + 1); }
  bool one_in(int64_t n) { return below(n) == 0; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(below(static_cast<int64_t>(v.size())))];
  }

 private:
  uint64_t state_;
};

// division-closed subset of N containing 1, at most max_size values
std::vector<int64_t> random_truncation_set(RandomSource& rng, int64_t max_norm,
                                           int64_t max_size);

// disjoint union of 1..3 random ordinary components, shuffled ids
PosetPtr random_poset(RandomSource& rng, int64_t max_elems, int64_t max_norm = 12);

// disjoint union of divisor posets <n> (these have joins)
PosetPtr random_joins_poset(RandomSource& rng, int64_t max_elems, int64_t max_norm = 12);

WittVector random_witt_vector(RandomSource& rng, PosetPtr p, int64_t lo, int64_t hi);
GhostVector random_ghost_vector(RandomSource& rng, PosetPtr p, int64_t lo, int64_t hi);

// random maps with the stated class and the given target; the source gets
// between min_source_components and max_source_components components
PosetMap random_tmap_to(RandomSource& rng, PosetPtr target, int max_source_components = 3,
                        int min_source_components = 0);
PosetMap random_nmap_to(RandomSource& rng, PosetPtr target, int max_source_components = 3,
                        int min_source_components = 0);
PosetMap random_rmap_to(RandomSource& rng, PosetPtr target, bool joins_source,
                        int max_source_components = 3, int min_source_components = 0);

// random T-map out of a fixed source (builds the target to fit)
PosetMap random_tmap_from(RandomSource& rng, PosetPtr source);
// random N-map out of a fixed source
PosetMap random_nmap_from(RandomSource& rng, PosetPtr source);

}  // namespace wittkit
