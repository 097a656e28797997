#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fiid {

// All randomized operations take explicit 64-bit seeds and use mt19937_64 with
// hand-rolled bounded draws, so runs are bit-reproducible across platforms
// (std::uniform_int_distribution is implementation-defined; we avoid it).
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    // rejection sampling; bound >= 1
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

}  // namespace fiid
