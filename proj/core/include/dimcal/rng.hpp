#ifndef DIMCAL_RNG_HPP
#define DIMCAL_RNG_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace dimcal {

/**
 * @file rng.hpp
 * @brief Seeded random number generation with a fully pinned-down algorithm.
 *
 * Every random quantity in the library is derived from std::mt19937_64 plus
 * the explicit mappings below, never from std::*_distribution (whose output
 * sequences are implementation-defined). Given a seed, the draw sequence is
 * therefore reproducible across standard library implementations:
 *
 * - uniform doubles: take the top 53 bits of one engine output,
 *   u = (x >> 11) * 2^-53, giving u in [0, 1).
 * - standard normals: Box-Muller on two uniforms,
 *   z0 = sqrt(-2 ln(1-u1)) * cos(2*pi*u2),
 *   z1 = sqrt(-2 ln(1-u1)) * sin(2*pi*u2),
 *   returned in that order (z1 is cached).
 * - bounded integers: unbiased rejection sampling on the raw 64-bit output.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log1p(-u1));
        const double angle = 2.0 * M_PI * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

    // Uniform integer in [0, bound), bound >= 1, via rejection sampling.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t raw = engine_();
            if (raw >= threshold) return raw % bound;
        }
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// SplitMix64 finalizer (Steele, Lea & Flood 2014); used to spread structured
// integers (grid index, repeat index) into independent-looking seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-cell seed for a hyperparameter sweep:
//   seed(i, j) = base ^ splitmix64((i << 32) | j)
// with i the grid index and j the repeat index.
inline std::uint64_t cell_seed(std::uint64_t base, std::uint64_t grid_index,
                               std::uint64_t repeat_index) {
    return base ^ splitmix64((grid_index << 32) | (repeat_index & 0xFFFFFFFFULL));
}

// First m entries of a seeded Fisher-Yates shuffle of {0, ..., n-1};
// a full permutation when m == n. Sampling is without replacement.
inline std::vector<std::ptrdiff_t> sample_without_replacement(std::ptrdiff_t n,
                                                              std::ptrdiff_t m,
                                                              Rng& rng) {
    std::vector<std::ptrdiff_t> pool(static_cast<std::size_t>(n));
    for (std::ptrdiff_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const auto j = i + static_cast<std::ptrdiff_t>(rng.uniform_below(
                               static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(m));
    return pool;
}

} // namespace dimcal

#endif
