#pragma once

// Seeded randomness. The engine is std::mt19937_64, whose output sequence is
// fixed by the C++ standard; every distribution here is implemented directly
// on its 64-bit words so results are identical across standard libraries.

#include <gptlab/rational.hpp>

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace gptlab {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_below: empty range");
    }
    // 2^64 mod bound; words below it are the biased remainder.
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = rng();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

/// Uniform integer in [0, bound) for arbitrary-precision bounds.
inline BigInt uniform_below(Rng &rng, const BigInt &bound) {
    if (bound <= 0) {
        throw std::invalid_argument("uniform_below: empty range");
    }
    if (bound <= std::numeric_limits<std::uint64_t>::max()) {
        return BigInt(uniform_below(rng, static_cast<std::uint64_t>(bound)));
    }
    const unsigned words = static_cast<unsigned>(boost::multiprecision::msb(bound) / 64 + 1);
    BigInt span = 1;
    span <<= 64 * words;
    const BigInt limit = span - span % bound;
    while (true) {
        BigInt r = 0;
        for (unsigned w = 0; w < words; ++w) {
            r <<= 64;
            r |= BigInt(rng());
        }
        if (r < limit) {
            return r % bound;
        }
    }
}

inline bool random_bit(Rng &rng) { return (rng() >> 63) != 0; }

}  // namespace gptlab
