#pragma once

#include <cstdint>
#include <random>

namespace swarmopt::rng {

// Stream tags keep the derived substreams of one optimizer run disjoint.
inline constexpr std::uint64_t kInit = 0x1;
inline constexpr std::uint64_t kBreed = 0x2;
inline constexpr std::uint64_t kEval = 0x3;
inline constexpr std::uint64_t kBaseline = 0x4;
inline constexpr std::uint64_t kInner = 0x5;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Stateless seed derivation. Substreams depend only on (root, tag, a, b),
/// never on how many other streams exist, so a longer run replays a shorter
/// run's prefix exactly and parallel evaluation matches sequential.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag, std::uint64_t a = 0,
                                 std::uint64_t b = 0) {
    std::uint64_t s = root;
    std::uint64_t h = splitmix64(s);
    s ^= tag * 0xD6E8FEB86659FD93ull;
    h ^= splitmix64(s);
    s ^= a * 0xA5A5A5A5A5A5A5A5ull + 0x165667B19E3779F9ull;
    h ^= splitmix64(s);
    s ^= b * 0x27D4EB2F165667C5ull + 0x9E3779B97F4A7C15ull;
    h ^= splitmix64(s);
    return h;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace swarmopt::rng
