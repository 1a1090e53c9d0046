#pragma once

#include <cstdint>

namespace qmalab {

namespace detail {
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Deterministic splittable random stream (splitmix64 core). One 64-bit seed
/// per run; every stochastic choice in the library draws from a stream derived
/// from it, so runs are reproducible bit-for-bit and trials can be fanned out
/// across workers without changing results.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : base_(seed), state_(seed) {}

  /// Child stream for an independent unit of work (trial, shot, instance).
  /// Depends only on this stream's seed and the index, not on how many values
  /// have been drawn so far.
  RandomStream split(uint64_t index) const {
    return RandomStream(detail::mix64(base_ ^ detail::mix64(index + 0x51ed2701a37fca3full)));
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return next_u64() >> 63; }

  /// Uniform integer in [0, bound). bound must be nonzero.
  uint64_t next_below(uint64_t bound) {
    // Rejection sampling on the top bits; bias is negligible for the bounds
    // used here but rejecting keeps draws exactly uniform.
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  uint64_t seed() const { return base_; }

 private:
  uint64_t base_;
  uint64_t state_;
};

}  // namespace qmalab
