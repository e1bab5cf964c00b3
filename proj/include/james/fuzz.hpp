#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "james/config.hpp"
#include "james/norm.hpp"
#include "james/rng.hpp"
#include "james/sequence.hpp"

namespace james {

/// Result of one property-fuzzing suite; counterexamples holds the first few
/// offending vectors (pairs are stored as consecutive entries).
struct FuzzSuiteResult {
    std::string suite;
    int trials = 0;
    int failures = 0;
    bool pass = false;
    std::map<std::string, double> metrics;
    std::vector<FiniteSequence> counterexamples;
};

struct FuzzReport {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<FuzzSuiteResult> suites;
    bool pass = false;
};

namespace detail {
inline void record_failure(FuzzSuiteResult& r, std::initializer_list<FiniteSequence> vectors) {
    ++r.failures;
    if (r.counterexamples.size() < 6) {
        for (const auto& v : vectors) r.counterexamples.push_back(v);
    }
}
}  // namespace detail

/// DP norm vs. brute-force subset enumeration, both variants, small support.
inline FuzzSuiteResult fuzz_oracle_equivalence(std::uint64_t seed, int trials, int max_support = 12) {
    FuzzSuiteResult r{"oracle_equivalence", trials, 0, false, {}, {}};
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const FiniteSequence x = random_sequence(rng, max_support);
        for (NormVariant v : {NormVariant::differences_only, NormVariant::leading_term}) {
            const double dp = james_norm(x, v).value;
            const double bf = james_norm_bruteforce(x, v);
            const double rel = std::abs(dp - bf) / std::max(1.0, std::abs(bf));
            worst = std::max(worst, rel);
            if (rel > 1e-12) detail::record_failure(r, {x});
        }
    }
    r.metrics["max_relative_difference"] = worst;
    r.pass = r.failures == 0;
    return r;
}

/// Lemma 1: || a * b ||_J <= ||a||_J ||b||_inf + ||a||_inf ||b||_J.
inline FuzzSuiteResult fuzz_lemma1(std::uint64_t seed, int trials, int max_support = 20) {
    FuzzSuiteResult r{"lemma1_product_inequality", trials, 0, false, {}, {}};
    Rng rng(seed);
    double min_gap = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const FiniteSequence a = random_sequence(rng, max_support);
        const FiniteSequence b = random_sequence(rng, max_support);
        for (NormVariant v : {NormVariant::differences_only, NormVariant::leading_term}) {
            const double gap = lemma1_gap(a, b, v);
            min_gap = std::min(min_gap, gap);
            if (gap < -1e-12) detail::record_failure(r, {a, b});
        }
    }
    r.metrics["min_gap"] = min_gap;
    r.pass = r.failures == 0;
    return r;
}

/// Monotone one-signed sequences have DIFFERENCES_ONLY norm equal to the
/// first entry's magnitude; under LEADING_TERM the unit vector e_1 instead
/// gets sqrt(2), pinning down the variant choice.
inline FuzzSuiteResult fuzz_monotone_claim(std::uint64_t seed, int trials, int max_support = 20) {
    FuzzSuiteResult r{"monotone_claim", trials, 0, false, {}, {}};
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const FiniteSequence x = random_monotone_sequence(rng, max_support);
        const double diff = std::abs(james_norm(x, NormVariant::differences_only).value - std::abs(x.at(1)));
        worst = std::max(worst, diff);
        if (diff > 1e-12) detail::record_failure(r, {x});
    }
    const double e1_lead = james_norm(FiniteSequence::unit(1), NormVariant::leading_term).value;
    r.metrics["max_deviation"] = worst;
    r.metrics["e1_leading_term"] = e1_lead;
    if (std::abs(e1_lead - std::sqrt(2.0)) > 1e-12) detail::record_failure(r, {FiniteSequence::unit(1)});
    r.pass = r.failures == 0;
    return r;
}

/// value_DIFFERENCES_ONLY <= value_LEADING_TERM <= sqrt(2) * value_DIFFERENCES_ONLY.
inline FuzzSuiteResult fuzz_variant_sandwich(std::uint64_t seed, int trials, int max_support = 20) {
    FuzzSuiteResult r{"variant_sandwich", trials, 0, false, {}, {}};
    Rng rng(seed);
    double max_ratio = 1.0;
    for (int t = 0; t < trials; ++t) {
        const FiniteSequence x = random_sequence(rng, max_support);
        const double d = james_norm(x, NormVariant::differences_only).value;
        const double l = james_norm(x, NormVariant::leading_term).value;
        if (d > 0.0) max_ratio = std::max(max_ratio, l / d);
        if (!(d <= l + 1e-12 && l <= std::sqrt(2.0) * d + 1e-12)) detail::record_failure(r, {x});
    }
    r.metrics["max_ratio"] = max_ratio;
    r.pass = r.failures == 0;
    return r;
}

/// The James norm dominates the sup norm in both variants.
inline FuzzSuiteResult fuzz_norm_dominates_sup(std::uint64_t seed, int trials, int max_support = 20) {
    FuzzSuiteResult r{"norm_dominates_sup", trials, 0, false, {}, {}};
    Rng rng(seed);
    double min_slack = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const FiniteSequence x = random_sequence(rng, max_support);
        const double s = sup_norm(x);
        for (NormVariant v : {NormVariant::differences_only, NormVariant::leading_term}) {
            const double slack = james_norm(x, v).value - s;
            min_slack = std::min(min_slack, slack);
            if (slack < -1e-12) detail::record_failure(r, {x});
        }
    }
    r.metrics["min_slack"] = min_slack;
    r.pass = r.failures == 0;
    return r;
}

/// All five suites under per-suite sub-seeds derived from one base seed.
inline FuzzReport run_fuzz(std::uint64_t seed, int trials) {
    if (trials < 1) throw std::invalid_argument("run_fuzz: trials must be >= 1");
    FuzzReport rep;
    rep.seed = seed;
    rep.trials = trials;
    rep.suites.push_back(fuzz_oracle_equivalence(derive_seed(seed, streams::fuzz_oracle), trials));
    rep.suites.push_back(fuzz_lemma1(derive_seed(seed, streams::fuzz_lemma1), trials));
    rep.suites.push_back(fuzz_monotone_claim(derive_seed(seed, streams::fuzz_monotone), trials));
    rep.suites.push_back(fuzz_variant_sandwich(derive_seed(seed, streams::fuzz_sandwich), trials));
    rep.suites.push_back(fuzz_norm_dominates_sup(derive_seed(seed, streams::fuzz_dominates), trials));
    rep.pass = true;
    for (const auto& s : rep.suites) {
        if (!s.pass) rep.pass = false;
    }
    return rep;
}

}  // namespace james
