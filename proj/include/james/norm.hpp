#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "james/sequence.hpp"

namespace james {

/// The two readings of the James norm.
///   leading_term:     value^2 = x_{p_1}^2 + sum of squared successive differences
///   differences_only: value^2 =             sum of squared successive differences
/// Under differences_only the norm of a one-signed sequence with non-increasing
/// absolute values is exactly |x_1|; under leading_term it is not (||e_1|| = sqrt(2)).
enum class NormVariant { leading_term, differences_only };

inline const char* to_string(NormVariant v) {
    return v == NormVariant::leading_term ? "leading_term" : "differences_only";
}

inline NormVariant variant_from_string(const std::string& s) {
    if (s == "leading_term" || s == "lead" || s == "leading-term") return NormVariant::leading_term;
    if (s == "differences_only" || s == "diff" || s == "diff-only" || s == "differences-only")
        return NormVariant::differences_only;
    throw std::invalid_argument("unknown norm variant: " + s);
}

/// A strictly increasing tuple of positive integers p_1 < ... < p_k.
class IndexPattern {
public:
    IndexPattern() = default;

    explicit IndexPattern(std::vector<int> indices) : indices_(std::move(indices)) {
        int prev = 0;
        for (int p : indices_) {
            if (p <= prev) throw std::invalid_argument("IndexPattern: indices must be strictly increasing and >= 1");
            prev = p;
        }
    }

    IndexPattern(std::initializer_list<int> indices) : IndexPattern(std::vector<int>(indices)) {}

    int size() const { return static_cast<int>(indices_.size()); }
    bool empty() const { return indices_.empty(); }
    int operator[](int i) const { return indices_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& indices() const { return indices_; }

    bool operator==(const IndexPattern&) const = default;

private:
    std::vector<int> indices_;
};

/// Value of one pattern: sqrt of the (variant-dependent) sum of squares,
/// reading x as 0 beyond its support. Empty pattern -> 0.
inline double pattern_value(const FiniteSequence& x, const IndexPattern& p, NormVariant v) {
    if (p.empty()) return 0.0;
    double acc = 0.0;
    if (v == NormVariant::leading_term) {
        const double x1 = x.at(p[0]);
        acc = x1 * x1;
    }
    for (int i = 1; i < p.size(); ++i) {
        const double d = x.at(p[i]) - x.at(p[i - 1]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

struct JamesNormResult {
    double value = 0.0;
    IndexPattern optimal_pattern;
    NormVariant variant = NormVariant::differences_only;
};

namespace detail {

// Positions run over 1..m with m = support_length + 1; position m stands for
// any index beyond the support (value 0). A pattern using two or more
// beyond-support indices gains nothing, so this range is exhaustive.
inline int dp_position_count(const FiniteSequence& x) { return x.support_length() + 1; }

inline double variant_base(double xj, NormVariant v) {
    return v == NormVariant::leading_term ? xj * xj : 0.0;
}

}  // namespace detail

/// Exact James norm by dynamic programming in O(n^2), with the optimal pattern.
/// Ties are broken deterministically: shortest pattern first, then the
/// lexicographically smallest one (so the all-ones vector yields (1, n+1),
/// not (1, 2, ..., n+1)). Reconstruction stores one DP layer per pattern
/// index, so memory is O(n * k) for optimal pattern length k.
inline JamesNormResult james_norm(const FiniteSequence& x, NormVariant v) {
    const int m = detail::dp_position_count(x);
    auto val = [&](int j) { return x.at(j); };

    // cont[j]: largest squared value addable after a pattern ending at j.
    std::vector<double> cont(static_cast<std::size_t>(m) + 1, 0.0);
    for (int j = m - 1; j >= 1; --j) {
        double best = 0.0;
        const double xj = val(j);
        for (int l = j + 1; l <= m; ++l) {
            const double d = val(l) - xj;
            best = std::max(best, d * d + cont[static_cast<std::size_t>(l)]);
        }
        cont[static_cast<std::size_t>(j)] = best;
    }

    double best_sq = 0.0;
    for (int j = 1; j <= m; ++j) {
        best_sq = std::max(best_sq, detail::variant_base(val(j), v) + cont[static_cast<std::size_t>(j)]);
    }
    if (best_sq == 0.0) return {0.0, IndexPattern{}, v};

    // layer[t][j]: largest squared value addable after j using exactly t more
    // indices (-inf when fewer than t positions remain). Chains are summed
    // right to left exactly as in cont[], so equality tests below are exact.
    constexpr double kUnreachable = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> layer;
    layer.emplace_back(static_cast<std::size_t>(m) + 1, 0.0);

    int t_star = -1;
    int start = -1;
    for (int t = 0; t < m && t_star < 0; ++t) {
        if (t > 0) {
            std::vector<double> cur(static_cast<std::size_t>(m) + 1, kUnreachable);
            const auto& prev = layer[static_cast<std::size_t>(t - 1)];
            for (int j = 1; j <= m - t; ++j) {
                const double xj = val(j);
                double best = kUnreachable;
                for (int l = j + 1; l <= m; ++l) {
                    if (prev[static_cast<std::size_t>(l)] == kUnreachable) continue;
                    const double d = val(l) - xj;
                    best = std::max(best, d * d + prev[static_cast<std::size_t>(l)]);
                }
                cur[static_cast<std::size_t>(j)] = best;
            }
            layer.push_back(std::move(cur));
        }
        for (int j = 1; j <= m; ++j) {
            if (detail::variant_base(val(j), v) + layer[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] == best_sq) {
                t_star = t;
                start = j;
                break;
            }
        }
    }

    std::vector<int> indices{start};
    double remaining = layer[static_cast<std::size_t>(t_star)][static_cast<std::size_t>(start)];
    int j = start;
    for (int t = t_star; t >= 1; --t) {
        const auto& prev = layer[static_cast<std::size_t>(t - 1)];
        for (int l = j + 1; l <= m; ++l) {
            if (prev[static_cast<std::size_t>(l)] == kUnreachable) continue;
            const double d = val(l) - val(j);
            if (d * d + prev[static_cast<std::size_t>(l)] == remaining) {
                indices.push_back(l);
                remaining = prev[static_cast<std::size_t>(l)];
                j = l;
                break;
            }
        }
    }

    return {std::sqrt(best_sq), IndexPattern(std::move(indices)), v};
}

/// Exhaustive maximum of pattern_value over every subset of {1, ..., n+1}.
/// Oracle for james_norm; independent of the DP path.
inline double james_norm_bruteforce(const FiniteSequence& x, NormVariant v) {
    if (x.support_length() > 20) {
        throw std::invalid_argument("james_norm_bruteforce: support_length > 20 (2^(n+1) subsets)");
    }
    const int m = detail::dp_position_count(x);
    double best = 0.0;
    std::vector<int> indices;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        indices.clear();
        for (int j = 0; j < m; ++j) {
            if (mask & (1u << j)) indices.push_back(j + 1);
        }
        best = std::max(best, pattern_value(x, IndexPattern(indices), v));
    }
    return best;
}

/// RHS - LHS of the product inequality
///   ||a * b||_J <= ||a||_J ||b||_inf + ||a||_inf ||b||_J
/// in the given variant. Nonnegative up to rounding for all inputs.
inline double lemma1_gap(const FiniteSequence& a, const FiniteSequence& b, NormVariant v) {
    const double lhs = james_norm(star(a, b), v).value;
    const double rhs = james_norm(a, v).value * sup_norm(b) + sup_norm(a) * james_norm(b, v).value;
    return rhs - lhs;
}

}  // namespace james
