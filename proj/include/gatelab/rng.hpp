#pragma once

#include <cstdint>
#include <random>

namespace gatelab {

/// Explicit, value-semantic random stream. All library randomness flows
/// through streams seeded by the caller; there is no global RNG state.
struct RngStream {
    std::mt19937_64 gen;
    explicit RngStream(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Sub-seed derivation for reproducible parallel Monte Carlo:
/// hash of (master seed, trial, step, party tag).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = detail::splitmix64(master);
    h = detail::splitmix64(h ^ a);
    h = detail::splitmix64(h ^ b);
    h = detail::splitmix64(h ^ c);
    return h;
}

}  // namespace gatelab
