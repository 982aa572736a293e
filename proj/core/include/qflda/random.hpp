#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace qflda {

/// Seeded generator. Every stochastic routine takes one explicitly; there is
/// no global generator.
using RngStream = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream for (master seed, index). `domain` separates unrelated
/// consumers (sample generation vs. train/test split) sharing one master seed.
inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index,
                               std::uint64_t domain = 0) {
    const std::uint64_t s =
        splitmix64(splitmix64(master_seed ^ splitmix64(domain)) + splitmix64(~index));
    return RngStream(s);
}

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(RngStream& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(RngStream& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace qflda
