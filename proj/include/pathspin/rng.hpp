// Counter-based deterministic RNG. Each draw is a pure function of
// (seed, counter), so shot loops can be partitioned across workers and
// still reproduce the serial counts bit for bit.

#pragma once

#include <cstdint>

namespace pathspin::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t keyed(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x6A09E667F3BCC909ULL));
}

// Uniform double in [0, 1), 53 bits of precision.
inline double uniform(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(keyed(seed, counter) >> 11) * 0x1.0p-53;
}

} // namespace pathspin::rng
