#pragma once

#include <cstdint>
#include <random>

namespace shotnoise {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent sub-stream seed for (seed, a, b), e.g. (seed, class, serial).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
{
    return mix64(mix64(mix64(seed) ^ a) ^ b);
}

inline double uniform01(Rng &rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Poisson draw; a non-positive mean yields 0.
inline std::uint64_t poisson(Rng &rng, double mean)
{
    if (!(mean > 0.0))
        return 0;
    return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

} // namespace shotnoise
