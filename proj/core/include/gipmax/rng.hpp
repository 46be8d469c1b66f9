#pragma once

#include <cstdint>
#include <random>

namespace gipmax {

/// SplitMix64 finaliser; spreads nearby seeds across the state space.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Engine for replicate `index` of a batch seeded with `base`. Streams depend
/// only on (base, index), so batches can be evaluated in any order.
inline std::mt19937_64 stream_engine(std::uint64_t base, std::uint64_t index) {
    return std::mt19937_64(mix_seed(base ^ index));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// standard library, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
    return uniform01(rng) < p;
}

/// Uniform integer in [0, bound) by rejection, also library-independent.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

} // namespace gipmax
