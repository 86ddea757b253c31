#pragma once

#include <cstdint>

namespace hgen {

// SplitMix64 generator. std::mt19937 + std::uniform_* have
// implementation-defined output, which would make seeded runs differ across
// standard libraries; this keeps every random choice bit-identical anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    // Modulo bias is irrelevant at the sizes used here (bound << 2^64).
    return next_u64() % bound;
  }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Deterministic value in [0,1) derived from (seed, a, b). Used to break
// exact ties in message-passing updates without a shared generator.
inline double tie_noise(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  Rng rng(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b + 0x7f4a7c15ULL));
  return rng.next_double();
}

}  // namespace hgen
