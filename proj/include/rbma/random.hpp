#ifndef RBMA_RANDOM_HPP
#define RBMA_RANDOM_HPP

#include <cstdint>
#include <random>

namespace rbma {

// Seeded generator whose derived draws do not depend on the standard
// library's distribution implementations, so streams match across
// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Standard normal via Box-Muller (one value per call, no caching).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace rbma

#endif  // RBMA_RANDOM_HPP
