#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "james/embedding.hpp"

namespace james {

/// Run parameters shared by the CLI commands; a config file may set any
/// subset, flags override, validate() gates every command.
struct RunConfig {
    int n = 8;
    EmbeddingMode mode = EmbeddingMode::probe_exact;
    double delta = 0.25;  // net mode only
    int probe_count = 16;
    int fuzz_trials = 10000;
    std::uint64_t seed = 42;
    int grid_resolution = 512;
    std::string output_dir = ".";

    void validate() const {
        if (n < 1) throw std::invalid_argument("config: n must be >= 1");
        if (mode == EmbeddingMode::net && n > 12) {
            throw std::invalid_argument("config: net mode requires n <= 12");
        }
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("config: delta must lie in (0, 1)");
        if (probe_count < 1) throw std::invalid_argument("config: probe_count must be >= 1");
        if (fuzz_trials < 1) throw std::invalid_argument("config: fuzz_trials must be >= 1");
        if (grid_resolution < 2) throw std::invalid_argument("config: grid_resolution must be >= 2");
        if (output_dir.empty()) throw std::invalid_argument("config: output_dir must be nonempty");
    }
};

/// Fixed sub-seed streams so every consumer of randomness is reproducible
/// and build-time audits can replay exactly what verification will draw.
namespace streams {
inline constexpr std::uint64_t probes = 11;
inline constexpr std::uint64_t fuzz_oracle = 101;
inline constexpr std::uint64_t fuzz_lemma1 = 102;
inline constexpr std::uint64_t fuzz_monotone = 103;
inline constexpr std::uint64_t fuzz_sandwich = 104;
inline constexpr std::uint64_t fuzz_dominates = 105;
inline constexpr std::uint64_t embedding_audit = 201;
inline constexpr std::uint64_t sandwich_lambdas = 301;
inline constexpr std::uint64_t midline_checks = 302;
inline constexpr std::uint64_t stabilization_points = 303;
inline constexpr std::uint64_t grid_checks = 304;
inline constexpr std::uint64_t partial_sums = 305;
}  // namespace streams

/// Number of random sandwich vectors audited at build time and re-drawn at
/// verification time; shared so the audited M_eff covers the verified set.
inline constexpr int sandwich_trial_count = 1000;

}  // namespace james
