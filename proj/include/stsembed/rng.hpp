#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace stsembed {

// SplitMix64 finalizer; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_str(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Counter-based seed splitter: one global seed expands into independent
// per-stage streams, so any stage can be re-run in isolation.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage, std::uint64_t counter = 0) {
    return mix64(mix64(seed ^ hash_str(stage)) + counter);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Unbiased integer in [0, n) by rejection; avoids std::uniform_int_distribution,
// whose output is not pinned down by the standard across implementations.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double rand_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Stateless per-index uniform draw in [0, 1); used where a monotone coupling
// across parameter values is wanted (same seed and index -> same value).
inline double unit_at(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)) >> 11) * 0x1.0p-53;
}

}  // namespace stsembed
