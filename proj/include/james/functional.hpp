#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "james/norm.hpp"
#include "james/sequence.hpp"

namespace james {

/// A norming functional: an index pattern plus unit-l2 coefficients, one per
/// successive difference. By Cauchy-Schwarz its value on any x is bounded by
/// the differences_only James norm of x.
struct PatternFunctional {
    IndexPattern pattern;
    std::vector<double> coefficients;

    bool operator==(const PatternFunctional&) const = default;
};

inline void validate(const PatternFunctional& phi) {
    if (phi.pattern.size() < 2) throw std::invalid_argument("PatternFunctional: pattern needs >= 2 indices");
    if (static_cast<int>(phi.coefficients.size()) != phi.pattern.size() - 1) {
        throw std::invalid_argument("PatternFunctional: need pattern length - 1 coefficients");
    }
    double sq = 0.0;
    for (double c : phi.coefficients) sq += c * c;
    if (std::abs(sq - 1.0) > 1e-12) {
        throw std::invalid_argument("PatternFunctional: coefficients must have unit l2 norm");
    }
}

/// sum_i c_i (x_{p_{i+1}} - x_{p_i})
inline double eval_functional(const PatternFunctional& phi, const FiniteSequence& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < phi.coefficients.size(); ++i) {
        const double d = x.at(phi.pattern[static_cast<int>(i) + 1]) - x.at(phi.pattern[static_cast<int>(i)]);
        acc += phi.coefficients[i] * d;
    }
    return acc;
}

/// The Cauchy-Schwarz-optimal functional of a nonzero x (differences_only):
/// pattern = the optimal DP pattern, coefficients = the successive differences
/// of x along it, normalized to unit l2. Evaluates on x to exactly ||x||_J.
inline PatternFunctional optimal_functional(const FiniteSequence& x, NormVariant v) {
    if (v != NormVariant::differences_only) {
        throw std::invalid_argument("optimal_functional: only the differences_only variant is normed this way");
    }
    if (x.is_zero()) throw std::invalid_argument("optimal_functional: zero vector has no normalizable coefficients");

    const JamesNormResult r = james_norm(x, v);
    const IndexPattern& p = r.optimal_pattern;
    std::vector<double> diffs(static_cast<std::size_t>(p.size() - 1));
    double sq = 0.0;
    for (int i = 1; i < p.size(); ++i) {
        const double d = x.at(p[i]) - x.at(p[i - 1]);
        diffs[static_cast<std::size_t>(i - 1)] = d;
        sq += d * d;
    }
    const double norm = std::sqrt(sq);
    for (double& d : diffs) d /= norm;
    return {p, std::move(diffs)};
}

}  // namespace james
