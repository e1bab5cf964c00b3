#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "james/sequence.hpp"

namespace james {

/// SplitMix64. Used for all randomness so that reports are byte-identical
/// across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double next_pm1() { return 2.0 * next_unit() - 1.0; }

    /// Uniform integer in [lo, hi].
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

/// Fixed sub-seed derivation: one SplitMix64 round of base + stream * golden.
/// Every suite and every trial gets its own stream so that runs are
/// reproducible regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    Rng r(base + stream * 0x9E3779B97F4A7C15ull);
    return r.next_u64();
}

/// Random coefficient vector: support length uniform in [1, max_support],
/// entries uniform in [-1, 1).
inline FiniteSequence random_sequence(Rng& rng, int max_support) {
    const int n = rng.next_int(1, max_support);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (double& e : c) e = rng.next_pm1();
    return FiniteSequence(std::move(c));
}

/// Random nonzero vector supported on [1, max_support].
inline FiniteSequence random_nonzero_sequence(Rng& rng, int max_support) {
    for (;;) {
        FiniteSequence x = random_sequence(rng, max_support);
        if (!x.is_zero()) return x;
    }
}

/// Random one-signed sequence with non-increasing absolute values.
inline FiniteSequence random_monotone_sequence(Rng& rng, int max_support) {
    const int n = rng.next_int(1, max_support);
    const double sign = rng.next_u64() & 1 ? 1.0 : -1.0;
    std::vector<double> c(static_cast<std::size_t>(n));
    for (double& e : c) e = rng.next_unit();
    std::sort(c.begin(), c.end(), std::greater<double>());
    for (double& e : c) e *= sign;
    return FiniteSequence(std::move(c));
}

}  // namespace james
