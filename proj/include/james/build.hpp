#pragma once

#include <vector>

#include "james/config.hpp"
#include "james/embedding.hpp"
#include "james/rng.hpp"
#include "james/sequence.hpp"

namespace james {

/// The deterministic probe set of a config: e_1..e_N, the all-ones vector,
/// then probe_count random nonzero vectors from the probe stream.
inline std::vector<FiniteSequence> standard_probe_set(const RunConfig& config) {
    std::vector<FiniteSequence> probes;
    for (int i = 1; i <= config.n; ++i) probes.push_back(FiniteSequence::unit(i));
    probes.push_back(FiniteSequence::ones(config.n));
    Rng rng(derive_seed(config.seed, streams::probes));
    for (int i = 0; i < config.probe_count; ++i) {
        probes.push_back(random_nonzero_sequence(rng, config.n));
    }
    return probes;
}

/// The audit set of a probe-exact build: every window vector plus the exact
/// lambda population the verification command re-draws from the same seed,
/// so the audited M_eff covers everything verification will test.
inline std::vector<FiniteSequence> standard_audit_set(const RunConfig& config) {
    std::vector<FiniteSequence> audit;
    for (int m = 0; m < config.n; ++m) {
        for (int n = m + 1; n <= config.n; ++n) audit.push_back(FiniteSequence::window(m, n));
    }
    Rng rng(derive_seed(config.seed, streams::sandwich_lambdas));
    for (int i = 0; i < sandwich_trial_count; ++i) {
        audit.push_back(random_nonzero_sequence(rng, config.n));
    }
    return audit;
}

/// The artifact a config describes: net mode from (N, delta), probe-exact
/// mode from the standard probe and audit sets.
inline EmbeddingArtifact standard_build(const RunConfig& config) {
    config.validate();
    if (config.mode == EmbeddingMode::net) {
        return build_embedding_net(config.n, config.delta);
    }
    return build_embedding_probe_exact(config.n, standard_probe_set(config), standard_audit_set(config));
}

}  // namespace james
