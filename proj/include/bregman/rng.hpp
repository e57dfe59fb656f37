#ifndef BREGMAN_RNG_HPP
#define BREGMAN_RNG_HPP

#include <cstdint>
#include <vector>

namespace bregman {

/// SplitMix64: the project-wide PRNG. 64-bit state, portable across
/// platforms, and cheap to split into independent per-cell streams by
/// mixing derivation keys into the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n), unbiased via rejection. n must be > 0.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ULL) / n);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Derived seed for an independent stream keyed by up to three indices.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
    std::uint64_t s = mix(seed ^ mix(a + 1));
    s = mix(s ^ mix(b + 2));
    return mix(s ^ mix(c + 3));
  }

 private:
  std::uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace bregman

#endif
