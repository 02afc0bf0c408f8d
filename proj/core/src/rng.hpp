#pragma once

#include <cmath>
#include <cstdint>

#include "olct/types.hpp"

// Portable deterministic random stream shared by the signal generators and
// the experiment noise model. Not part of the installed interface.
namespace olct::detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Box-Muller; rejects the log(0) corner so the output is always finite.
inline double gauss(std::uint64_t& state) {
    double u1 = uniform01(state);
    while (u1 <= 0.0) u1 = uniform01(state);
    const double u2 = uniform01(state);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Order-sensitive combine for deriving independent per-run seeds.
inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = a ^ (b * 0xff51afd7ed558ccdull + 0x2545f4914f6cdd1dull);
    return splitmix64(state);
}

}  // namespace olct::detail
