#pragma once

// Seeded randomness used everywhere in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. None of the <random> distributions are used because their
// algorithms are implementation-defined; the conversions below are pinned so
// that every histogram, dataset and initialization is reproducible
// byte-for-byte from its seed:
//
//   uniform01()      = (engine() >> 11) * 2^-53            in [0, 1)
//   uniform_index(n) = rejection sampling on engine() % n  (unbiased)
//   normal()         = Box-Muller on (1 - uniform01(), uniform01())
//
// Sub-seeds are derived with the splitmix64 finalizer.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qkm {

/// splitmix64 output function; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Folds a list of integers into a seed. Order matters.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = mix64(base);
    for (std::uint64_t p : parts) {
        h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be nonzero.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal deviate.
    double normal();

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qkm
