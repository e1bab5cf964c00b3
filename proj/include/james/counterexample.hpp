#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "james/embedding.hpp"
#include "james/norm.hpp"
#include "james/rng.hpp"
#include "james/sequence.hpp"

namespace james {

/// A point of the unit square K = [0,1] x [0,1].
struct SquarePoint {
    double a = 0.0;
    double b = 0.0;

    bool operator==(const SquarePoint&) const = default;
};

inline bool in_square(const SquarePoint& pt) {
    return pt.a >= 0.0 && pt.a <= 1.0 && pt.b >= 0.0 && pt.b <= 1.0;
}

namespace detail {
inline void check_point(const SquarePoint& pt, const char* who) {
    if (!in_square(pt)) throw std::invalid_argument(std::string(who) + ": point must lie in the unit square");
}
}  // namespace detail

enum class RegionTag { K, K_n, R_n, L_n, L, U };

inline const char* to_string(RegionTag t) {
    switch (t) {
        case RegionTag::K: return "K";
        case RegionTag::K_n: return "K_n";
        case RegionTag::R_n: return "R_n";
        case RegionTag::L_n: return "L_n";
        case RegionTag::L: return "L";
        case RegionTag::U: return "U";
    }
    throw std::logic_error("unreachable region tag");
}

inline RegionTag region_tag_from_string(const std::string& s) {
    if (s == "K") return RegionTag::K;
    if (s == "K_n") return RegionTag::K_n;
    if (s == "R_n") return RegionTag::R_n;
    if (s == "L_n") return RegionTag::L_n;
    if (s == "L") return RegionTag::L;
    if (s == "U") return RegionTag::U;
    throw std::invalid_argument("unknown region tag: " + s);
}

/// A named subset of the square: K itself, the closed upper part K_n
/// {b >= 2^-n}, the open upper part R_n {b > 2^-n}, the horizontal line L_n
/// {b = 2^-n}, the bottom edge L {b = 0}, or the open dense part U {b > 0}.
struct Region {
    RegionTag tag = RegionTag::K;
    int n = 0;  // used by K_n / R_n / L_n

    Region() = default;
    Region(RegionTag t, int level = 0) : tag(t), n(level) {
        const bool indexed = tag == RegionTag::K_n || tag == RegionTag::R_n || tag == RegionTag::L_n;
        if (indexed && n < 1) throw std::invalid_argument("Region: indexed regions need n >= 1");
        if (!indexed && n != 0) throw std::invalid_argument("Region: only K_n/R_n/L_n carry an index");
    }

    bool operator==(const Region&) const = default;
};

/// Membership test with exact dyadic comparisons; points outside K are in no
/// region.
inline bool region_contains(const Region& r, const SquarePoint& pt) {
    if (!in_square(pt)) return false;
    switch (r.tag) {
        case RegionTag::K: return true;
        case RegionTag::K_n: return pt.b >= std::ldexp(1.0, -r.n);
        case RegionTag::R_n: return pt.b > std::ldexp(1.0, -r.n);
        case RegionTag::L_n: return pt.b == std::ldexp(1.0, -r.n);
        case RegionTag::L: return pt.b == 0.0;
        case RegionTag::U: return pt.b > 0.0;
    }
    throw std::logic_error("unreachable region tag");
}

/// Effective equivalence constant of an artifact and where it came from:
/// "certified" (net construction) or "audited" (empirical probe-mode audit).
struct EffectiveConstant {
    double value = 1.0;
    std::string source;
};

inline EffectiveConstant effective_m(const EmbeddingArtifact& art) {
    return {art.M, art.mode == EmbeddingMode::net ? "certified" : "audited"};
}

/// The system (g_n)_{n<=N} on the unit square built over a tent embedding:
/// g_n vanishes for b >= 2^-n, equals (1 - 2^n b) f_n(a) below, so it
/// interpolates linearly between f_n on the bottom edge and 0 on L_n.
struct CounterexampleSystem {
    EmbeddingArtifact art;

    explicit CounterexampleSystem(EmbeddingArtifact a) : art(std::move(a)) {
        if (art.N < 1) throw std::invalid_argument("CounterexampleSystem: artifact must have N >= 1");
    }

    int N() const { return art.N; }
};

namespace detail {
/// The b-dependent weight of g_n: exactly 0 for b >= 2^-n (the comparison
/// 2^n b >= 1 is exact because scaling by a power of two is), else 1 - 2^n b.
inline double g_weight(int n, double b) {
    return std::max(0.0, 1.0 - std::ldexp(b, n));
}
}  // namespace detail

/// g_n(a, b); the two defining clauses agree exactly at b = 2^-n.
inline double eval_g(const CounterexampleSystem& sys, int n, const SquarePoint& pt) {
    if (n < 1 || n > sys.N()) throw std::invalid_argument("eval_g: n must lie in [1, N]");
    detail::check_point(pt, "eval_g");
    const double w = detail::g_weight(n, pt.b);
    if (w == 0.0) return 0.0;
    return w * eval_f(sys.art, n, pt.a);
}

/// sum_i lambda_i g_i(pt); single tent lookup, O(N) per call.
inline double eval_combination(const CounterexampleSystem& sys, const FiniteSequence& lambda,
                               const SquarePoint& pt) {
    detail::check_point(pt, "eval_combination");
    detail::check_supported(lambda, sys.N(), "eval_combination");
    const int k = interval_index_at(sys.art, pt.a);
    if (k < 0) return 0.0;
    const auto& iv = sys.art.intervals[static_cast<std::size_t>(k)];
    const double tent = 1.0 - std::abs(pt.a - iv.center) / iv.radius;
    double acc = 0.0;
    const int n = std::min(sys.N(), lambda.support_length());
    for (int i = 1; i <= n; ++i) {
        acc += lambda.at(i) * detail::g_weight(i, pt.b) *
               sys.art.peaks[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)];
    }
    return acc * tent;
}

/// Coefficients of sum lambda_i g_i restricted to the line b = 2^-k, as a
/// combination of the f_i: entry i is lambda_i (2^{k-i} - 1) / 2^{k-i} for
/// i < k, zero from i = k on. All factors are exact dyadics.
inline FiniteSequence midline_coefficients(const CounterexampleSystem& sys, int k,
                                           const FiniteSequence& lambda) {
    if (k < 2 || k > sys.N()) throw std::invalid_argument("midline_coefficients: k must lie in [2, N]");
    detail::check_supported(lambda, sys.N(), "midline_coefficients");
    std::vector<double> out(static_cast<std::size_t>(k - 1), 0.0);
    for (int i = 1; i <= k - 1 && i <= lambda.support_length(); ++i) {
        const double p = std::ldexp(1.0, k - i);
        out[static_cast<std::size_t>(i - 1)] = lambda.at(i) * ((p - 1.0) / p);
    }
    return FiniteSequence(std::move(out));
}

/// Exact || sum lambda_i g_i ||_infinity over the whole square. For fixed a
/// the combination is piecewise linear in b with breakpoints at the lines
/// b = 2^-k and value 0 above b = 1/2, so the supremum is the largest exact
/// line supremum: the bottom edge carries coefficients lambda, the line
/// b = 2^-k carries midline_coefficients(k, lambda).
inline double sup_norm_exact(const CounterexampleSystem& sys, const FiniteSequence& lambda) {
    detail::check_supported(lambda, sys.N(), "sup_norm_exact");
    double best = sup_on_line(sys.art, lambda);
    for (int k = 2; k <= sys.N(); ++k) {
        best = std::max(best, sup_on_line(sys.art, midline_coefficients(sys, k, lambda)));
    }
    return best;
}

/// Least n with 2^-n <= b (so g_m(pt) = 0 for every m >= n); empty for b = 0.
inline std::optional<int> stabilization_index(const SquarePoint& pt) {
    detail::check_point(pt, "stabilization_index");
    if (pt.b == 0.0) return std::nullopt;
    int n = 1;
    while (std::ldexp(1.0, -n) > pt.b) ++n;
    return n;
}

/// Two-sided estimate ||lambda||_J / M <= sup-norm <= 2 M ||lambda||_J.
struct SandwichReport {
    FiniteSequence lambda;
    double norm_j = 0.0;
    double lower = 0.0;
    double sup = 0.0;
    double upper = 0.0;
    double m_eff = 1.0;
    std::string m_source;
    bool pass = false;
};

inline SandwichReport verify_sandwich(const CounterexampleSystem& sys, const FiniteSequence& lambda,
                                      double tolerance = 1e-9) {
    SandwichReport rep;
    rep.lambda = lambda;
    const auto m = effective_m(sys.art);
    rep.m_eff = m.value;
    rep.m_source = m.source;
    rep.norm_j = james_norm(lambda, NormVariant::differences_only).value;
    rep.lower = rep.norm_j / m.value;
    rep.upper = 2.0 * m.value * rep.norm_j;
    rep.sup = sup_norm_exact(sys, lambda);
    rep.pass = rep.lower - tolerance <= rep.sup && rep.sup <= rep.upper + tolerance;
    return rep;
}

/// One pointwise stabilization check at u with b > 0: the partial sums
/// S_m(u) are constant from the stabilization index on, and at most that
/// many increments g_m(u) are nonzero.
struct StabilizationCheck {
    SquarePoint u;
    int index = 0;
    bool constant_after = false;
    int nonzero_increments = 0;
    bool pass = false;
};

inline StabilizationCheck check_stabilization(const CounterexampleSystem& sys, const SquarePoint& pt) {
    detail::check_point(pt, "check_stabilization");
    if (pt.b <= 0.0) throw std::invalid_argument("check_stabilization: needs a point of U (b > 0)");
    StabilizationCheck rep;
    rep.u = pt;
    rep.index = *stabilization_index(pt);

    const int n_max = sys.N();
    std::vector<double> s(static_cast<std::size_t>(n_max) + 1, 0.0);
    rep.nonzero_increments = 0;
    for (int m = 1; m <= n_max; ++m) {
        const double g = eval_g(sys, m, pt);
        s[static_cast<std::size_t>(m)] = s[static_cast<std::size_t>(m - 1)] + g;
        if (g != 0.0) ++rep.nonzero_increments;
    }
    rep.constant_after = true;
    for (int m = rep.index; m <= n_max; ++m) {
        if (s[static_cast<std::size_t>(m)] != s[static_cast<std::size_t>(std::min(rep.index, n_max))]) {
            rep.constant_after = false;
        }
    }
    rep.pass = rep.constant_after && rep.nonzero_increments <= rep.index;
    return rep;
}

/// Partial-sum battery over S_n = g_1 + ... + g_n:
/// (i) uniform bound, (ii) pointwise stabilization on sampled points of U,
/// (iii) non-Cauchy witness over all windows, (iv) weak-Cauchy proxy on the
/// stored functionals.
struct PartialSumsReport {
    int n_max = 0;
    double m_eff = 1.0;
    std::string m_source;
    std::vector<double> partial_sup_norms;  // || S_n ||, n = 1..N
    double uniform_bound = 0.0;             // 2 M_eff
    bool pass_uniform = false;
    std::uint64_t seed = 0;
    int sample_count = 0;
    bool pass_stabilization = false;
    double min_noncauchy = 0.0;  // min over m < n of || S_n - S_m ||
    double noncauchy_bound = 0.0;  // 1 / M_eff
    bool pass_noncauchy = false;
    bool pass_weak_cauchy = false;
    bool pass = false;
};

inline PartialSumsReport verify_partial_sums(const CounterexampleSystem& sys, std::uint64_t seed = 0,
                                             int samples = 64, double tolerance = 1e-9) {
    if (samples < 1) throw std::invalid_argument("verify_partial_sums: samples must be >= 1");
    PartialSumsReport rep;
    const int n_max = sys.N();
    rep.n_max = n_max;
    const auto m_eff = effective_m(sys.art);
    rep.m_eff = m_eff.value;
    rep.m_source = m_eff.source;
    rep.seed = seed;
    rep.sample_count = samples;

    // (i) uniform bound
    rep.uniform_bound = 2.0 * m_eff.value;
    rep.pass_uniform = true;
    for (int n = 1; n <= n_max; ++n) {
        const double s = sup_norm_exact(sys, FiniteSequence::ones(n));
        rep.partial_sup_norms.push_back(s);
        if (s > rep.uniform_bound + tolerance) rep.pass_uniform = false;
    }

    // (ii) stabilization at sampled points of U
    Rng rng(derive_seed(seed, 801));
    rep.pass_stabilization = true;
    for (int t = 0; t < samples; ++t) {
        SquarePoint u{rng.next_unit(), 0.0};
        do {
            u.b = rng.next_unit();
        } while (u.b == 0.0);
        if (!check_stabilization(sys, u).pass) rep.pass_stabilization = false;
    }

    // (iii) non-Cauchy witness over every window (m, n]
    rep.noncauchy_bound = 1.0 / m_eff.value;
    rep.min_noncauchy = std::numeric_limits<double>::infinity();
    for (int m = 0; m < n_max; ++m) {
        for (int n = m + 1; n <= n_max; ++n) {
            rep.min_noncauchy = std::min(rep.min_noncauchy,
                                         sup_norm_exact(sys, FiniteSequence::window(m, n)));
        }
    }
    rep.pass_noncauchy = rep.min_noncauchy >= rep.noncauchy_bound - tolerance;

    // (iv) weak-Cauchy proxy: phi_k(1,...,1 up to n) is constant once n
    // reaches the largest pattern index (all later coordinates are zero).
    rep.pass_weak_cauchy = true;
    for (const auto& phi : sys.art.functionals) {
        const int p_max = phi.pattern.indices().back();
        bool first = true;
        double ref = 0.0;
        for (int n = p_max; n <= n_max; ++n) {
            const double v = eval_functional(phi, FiniteSequence::ones(n));
            if (first) {
                ref = v;
                first = false;
            } else if (v != ref) {
                rep.pass_weak_cauchy = false;
            }
        }
    }

    rep.pass = rep.pass_uniform && rep.pass_stabilization && rep.pass_noncauchy && rep.pass_weak_cauchy;
    return rep;
}

/// Largest |sum lambda_i g_i| over a resolution x resolution grid of K
/// (corners included). Cross-check oracle for sup_norm_exact.
inline double grid_max_abs(const CounterexampleSystem& sys, const FiniteSequence& lambda, int resolution) {
    if (resolution < 2) throw std::invalid_argument("grid_max_abs: resolution must be >= 2");
    detail::check_supported(lambda, sys.N(), "grid_max_abs");
    const int n = std::min(sys.N(), lambda.support_length());
    const auto& art = sys.art;
    double best = 0.0;
    std::vector<double> row_coeffs(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < resolution; ++j) {
        const double b = static_cast<double>(j) / static_cast<double>(resolution - 1);
        for (int i = 1; i <= n; ++i) {
            row_coeffs[static_cast<std::size_t>(i - 1)] = lambda.at(i) * detail::g_weight(i, b);
        }
        for (int i = 0; i < resolution; ++i) {
            const double a = static_cast<double>(i) / static_cast<double>(resolution - 1);
            const int k = interval_index_at(art, a);
            if (k < 0) continue;
            const auto& iv = art.intervals[static_cast<std::size_t>(k)];
            const double tent = 1.0 - std::abs(a - iv.center) / iv.radius;
            double acc = 0.0;
            for (int c = 0; c < n; ++c) {
                acc += row_coeffs[static_cast<std::size_t>(c)] *
                       art.peaks[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
            }
            best = std::max(best, std::abs(acc * tent));
        }
    }
    return best;
}

/// Grid-vs-exact cross-check: the grid max never exceeds the exact sup (up
/// to binary64 association noise) and the exact sup lies within one
/// Lipschitz step of the grid max.
struct GridCrossCheck {
    double grid_max = 0.0;
    double exact = 0.0;
    double slack = 0.0;  // (L_a + L_b) * mesh
    bool pass = false;
};

inline GridCrossCheck grid_cross_check(const CounterexampleSystem& sys, const FiniteSequence& lambda,
                                       int resolution, double tolerance = 1e-9) {
    GridCrossCheck rep;
    rep.grid_max = grid_max_abs(sys, lambda, resolution);
    rep.exact = sup_norm_exact(sys, lambda);
    const double mesh = 1.0 / static_cast<double>(resolution - 1);
    const double lip_a = line_lipschitz_bound(sys.art, lambda);
    double lip_b = 0.0;
    const int n = std::min(sys.N(), lambda.support_length());
    for (int i = 1; i <= n; ++i) {
        lip_b += std::abs(lambda.at(i)) * std::ldexp(1.0, i) *
                 sys.art.peak_abs_max[static_cast<std::size_t>(i - 1)];
    }
    rep.slack = (lip_a + lip_b) * mesh;
    rep.pass = rep.grid_max <= rep.exact + tolerance && rep.exact <= rep.grid_max + rep.slack + tolerance;
    return rep;
}

}  // namespace james
