#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "james/functional.hpp"
#include "james/norm.hpp"
#include "james/sequence.hpp"

namespace james {

enum class EmbeddingMode { probe_exact, net };

inline const char* to_string(EmbeddingMode m) {
    return m == EmbeddingMode::probe_exact ? "probe_exact" : "net";
}

inline EmbeddingMode mode_from_string(const std::string& s) {
    if (s == "probe_exact" || s == "probe") return EmbeddingMode::probe_exact;
    if (s == "net") return EmbeddingMode::net;
    throw std::invalid_argument("unknown embedding mode: " + s);
}

/// Peak interval of one tent: [center - radius, center + radius] subset of (0, 1].
struct PeakInterval {
    double center = 0.0;
    double radius = 0.0;

    bool operator==(const PeakInterval&) const = default;
};

/// One audited vector: its norm-to-sup ratio observed at build time.
struct AuditEntry {
    FiniteSequence vector;
    bool probe = false;
    double ratio = 1.0;

    bool operator==(const AuditEntry&) const = default;
};

/// A finite tent-function system (f_n)_{n<=N} on [0,1] equivalent to the first
/// N James unit vectors: f_n(t) = sum_k phi_k(e_n) tent_k(t) with pairwise
/// disjoint peak intervals accumulating only at 0.
///
/// probe_exact mode norms every declared probe vector exactly and carries an
/// empirical M audited on a stored vector set; net mode carries the certified
/// M = 1/(1-delta) valid for every lambda supported on [1,N].
struct EmbeddingArtifact {
    int N = 0;
    EmbeddingMode mode = EmbeddingMode::probe_exact;
    double M = 1.0;
    double delta = 0.0;  // net mode only
    std::vector<PatternFunctional> functionals;
    std::vector<PeakInterval> intervals;
    std::vector<AuditEntry> audit;

    // derived (filled by finalize)
    std::vector<std::vector<double>> peaks;  // peaks[k][n-1] = phi_k(e_n)
    std::vector<double> peak_abs_max;        // per n, max_k |phi_k(e_n)|

    void finalize();
};

namespace detail {

inline PeakInterval tent_interval(int k) {
    const double kk = static_cast<double>(k);
    return {1.0 / (2.0 * kk), 1.0 / (8.0 * kk * (kk + 1.0))};
}

inline std::string functional_key(const PatternFunctional& phi) {
    std::string key;
    for (int p : phi.pattern.indices()) {
        key += std::to_string(p);
        key += ',';
    }
    key += '|';
    for (double c : phi.coefficients) {
        key += std::to_string(static_cast<long long>(std::llround(c * 1e12)));
        key += ',';
    }
    return key;
}

inline void check_supported(const FiniteSequence& x, int N, const char* who) {
    for (int i = N + 1; i <= x.support_length(); ++i) {
        if (x.at(i) != 0.0) {
            throw std::invalid_argument(std::string(who) + ": vector must be supported on [1, N]");
        }
    }
}

}  // namespace detail

inline void EmbeddingArtifact::finalize() {
    if (N < 1) throw std::invalid_argument("EmbeddingArtifact: N must be >= 1");
    if (functionals.size() != intervals.size()) {
        throw std::invalid_argument("EmbeddingArtifact: one interval per functional");
    }
    for (const auto& phi : functionals) {
        validate(phi);
        if (phi.pattern.indices().back() > N + 1) {
            throw std::invalid_argument("EmbeddingArtifact: pattern indices must lie in [1, N+1]");
        }
    }
    for (std::size_t k = 0; k < intervals.size(); ++k) {
        const auto& iv = intervals[k];
        if (!(iv.radius > 0.0) || iv.center - iv.radius <= 0.0 || iv.center + iv.radius > 1.0) {
            throw std::invalid_argument("EmbeddingArtifact: interval must lie inside (0, 1]");
        }
        if (k > 0) {
            const auto& prev = intervals[k - 1];
            if (!(prev.center - prev.radius > iv.center + iv.radius)) {
                throw std::invalid_argument("EmbeddingArtifact: intervals must be disjoint and decreasing");
            }
        }
    }

    peaks.assign(functionals.size(), std::vector<double>(static_cast<std::size_t>(N), 0.0));
    peak_abs_max.assign(static_cast<std::size_t>(N), 0.0);
    for (std::size_t k = 0; k < functionals.size(); ++k) {
        const auto& phi = functionals[k];
        for (std::size_t i = 0; i < phi.coefficients.size(); ++i) {
            const int lo = phi.pattern[static_cast<int>(i)];
            const int hi = phi.pattern[static_cast<int>(i) + 1];
            if (lo <= N) peaks[k][static_cast<std::size_t>(lo - 1)] -= phi.coefficients[i];
            if (hi <= N) peaks[k][static_cast<std::size_t>(hi - 1)] += phi.coefficients[i];
        }
        for (int n = 0; n < N; ++n) {
            peak_abs_max[static_cast<std::size_t>(n)] =
                std::max(peak_abs_max[static_cast<std::size_t>(n)], std::abs(peaks[k][static_cast<std::size_t>(n)]));
        }
    }
}

/// Index of the peak interval containing t strictly inside, or -1.
/// Interval boundaries count as outside; the tent is 0 there either way.
inline int interval_index_at(const EmbeddingArtifact& art, double t) {
    if (art.intervals.empty()) return -1;
    // centers are strictly decreasing: find the first one below t, then
    // probe its neighborhood for containment
    int lo = 0;
    int hi = static_cast<int>(art.intervals.size());
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (art.intervals[static_cast<std::size_t>(mid)].center >= t) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    for (int k = std::max(0, lo - 1); k <= std::min(static_cast<int>(art.intervals.size()) - 1, lo + 1); ++k) {
        const auto& iv = art.intervals[static_cast<std::size_t>(k)];
        if (std::abs(t - iv.center) < iv.radius) return k;
    }
    return -1;
}

/// f_n(t): the single active tent scaled by phi_k(e_n); exactly 0 off all
/// intervals and at t = 0.
inline double eval_f(const EmbeddingArtifact& art, int n, double t) {
    if (n < 1 || n > art.N) throw std::invalid_argument("eval_f: n must lie in [1, N]");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("eval_f: t must lie in [0, 1]");
    const int k = interval_index_at(art, t);
    if (k < 0) return 0.0;
    const auto& iv = art.intervals[static_cast<std::size_t>(k)];
    const double tent = 1.0 - std::abs(t - iv.center) / iv.radius;
    return art.peaks[static_cast<std::size_t>(k)][static_cast<std::size_t>(n - 1)] * tent;
}

/// sum_{n<=N} c_n f_n(t) for a coefficient vector read 1-based; O(N) per call.
inline double eval_f_combination(const EmbeddingArtifact& art, const FiniteSequence& coeffs, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("eval_f_combination: t must lie in [0, 1]");
    detail::check_supported(coeffs, art.N, "eval_f_combination");
    const int k = interval_index_at(art, t);
    if (k < 0) return 0.0;
    const auto& iv = art.intervals[static_cast<std::size_t>(k)];
    const double tent = 1.0 - std::abs(t - iv.center) / iv.radius;
    double acc = 0.0;
    const int n = std::min(art.N, coeffs.support_length());
    for (int i = 1; i <= n; ++i) {
        acc += coeffs.at(i) * art.peaks[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)];
    }
    return acc * tent;
}

/// Exact sup over [0,1] of |sum lambda_n f_n|. The combination is piecewise
/// linear with breakpoints at interval centers and endpoints, where it takes
/// the values phi_k(lambda) and 0, so the sup is max_k |phi_k(lambda)|.
inline double sup_on_line(const EmbeddingArtifact& art, const FiniteSequence& lambda) {
    detail::check_supported(lambda, art.N, "sup_on_line");
    double best = 0.0;
    for (const auto& phi : art.functionals) {
        best = std::max(best, std::abs(eval_functional(phi, lambda)));
    }
    return best;
}

/// All breakpoints of the tent system on [0,1], sorted ascending.
inline std::vector<double> line_breakpoints(const EmbeddingArtifact& art) {
    std::vector<double> pts{0.0, 1.0};
    for (const auto& iv : art.intervals) {
        pts.push_back(iv.center - iv.radius);
        pts.push_back(iv.center);
        pts.push_back(iv.center + iv.radius);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// Lipschitz bound of sum c_n f_n on [0,1]:
/// sum |c_n| max_k |phi_k(e_n)| / min_k radius_k.
inline double line_lipschitz_bound(const EmbeddingArtifact& art, const FiniteSequence& coeffs) {
    double acc = 0.0;
    const int n = std::min(art.N, coeffs.support_length());
    for (int i = 1; i <= n; ++i) {
        acc += std::abs(coeffs.at(i)) * art.peak_abs_max[static_cast<std::size_t>(i - 1)];
    }
    return acc / art.intervals.back().radius;
}

/// Probe-exact build: the optimal functional of every probe plus the
/// single-difference functionals (n, N+1), deduplicated in that order. M is
/// the largest norm-to-sup ratio over the audit set (probes + audit_extra;
/// the unit vectors when both are empty).
inline EmbeddingArtifact build_embedding_probe_exact(int N, const std::vector<FiniteSequence>& probes,
                                                     const std::vector<FiniteSequence>& audit_extra = {}) {
    if (N < 1) throw std::invalid_argument("build_embedding_probe_exact: N must be >= 1");
    for (const auto& p : probes) {
        if (p.is_zero()) throw std::invalid_argument("build_embedding_probe_exact: probe vectors must be nonzero");
        detail::check_supported(p, N, "build_embedding_probe_exact");
    }

    EmbeddingArtifact art;
    art.N = N;
    art.mode = EmbeddingMode::probe_exact;

    std::map<std::string, bool> seen;
    auto push = [&](PatternFunctional phi) {
        if (seen.emplace(detail::functional_key(phi), true).second) {
            art.functionals.push_back(std::move(phi));
        }
    };
    for (const auto& p : probes) push(optimal_functional(p, NormVariant::differences_only));
    for (int n = 1; n <= N; ++n) push(PatternFunctional{IndexPattern{n, N + 1}, {-1.0}});

    art.intervals.reserve(art.functionals.size());
    for (int k = 1; k <= static_cast<int>(art.functionals.size()); ++k) {
        art.intervals.push_back(detail::tent_interval(k));
    }
    art.finalize();

    for (const auto& p : probes) art.audit.push_back({p, true, 0.0});
    for (const auto& x : audit_extra) {
        if (x.is_zero()) continue;
        detail::check_supported(x, N, "build_embedding_probe_exact audit");
        art.audit.push_back({x, false, 0.0});
    }
    if (art.audit.empty()) {
        for (int n = 1; n <= N; ++n) art.audit.push_back({FiniteSequence::unit(n), false, 0.0});
    }

    double m = 1.0;
    for (auto& entry : art.audit) {
        entry.ratio = james_norm(entry.vector, NormVariant::differences_only).value / sup_on_line(art, entry.vector);
        m = std::max(m, entry.ratio);
    }
    art.M = m;
    return art;
}

namespace detail {

/// Points on the unit sphere of R^dim such that every unit vector with
/// strictly alternating signs has inner product >= 1 - delta with some point.
/// Built from a magnitude grid of step h = sqrt(2 delta' / dim): rounding the
/// magnitudes of u gives g with ||g - u|| <= h sqrt(dim)/2, and the normalized
/// point c satisfies <c, u> >= 1 - 2 ||g - u||^2 >= 1 - delta'.
inline std::vector<std::vector<double>> sphere_net(int dim, double delta) {
    if (dim == 1) return {{1.0}, {-1.0}};

    const double capped = std::min(delta, 0.5);
    const double h = std::sqrt(2.0 * capped / static_cast<double>(dim));
    const int steps = static_cast<int>(std::ceil(1.0 / h));

    std::map<std::string, std::vector<double>> points;
    std::vector<int> odo(static_cast<std::size_t>(dim), 0);
    for (;;) {
        bool all_zero = true;
        for (int v : odo) {
            if (v != 0) all_zero = false;
        }
        if (!all_zero) {
            for (int parity = 0; parity < 2; ++parity) {
                std::vector<double> c(static_cast<std::size_t>(dim));
                double sq = 0.0;
                for (int i = 0; i < dim; ++i) {
                    const double sign = ((i + parity) % 2 == 0) ? 1.0 : -1.0;
                    c[static_cast<std::size_t>(i)] = sign * h * odo[static_cast<std::size_t>(i)];
                    sq += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
                }
                const double norm = std::sqrt(sq);
                std::string key;
                for (double& e : c) {
                    e /= norm;
                    key += std::to_string(static_cast<long long>(std::llround(e * 1e12)));
                    key += ',';
                }
                points.emplace(std::move(key), std::move(c));
            }
        }
        int i = 0;
        while (i < dim && odo[static_cast<std::size_t>(i)] == steps) {
            odo[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == dim) break;
        ++odo[static_cast<std::size_t>(i)];
    }

    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (auto& [key, c] : points) out.push_back(std::move(c));
    return out;
}

}  // namespace detail

/// Net build: every pattern inside [1, N+1] crossed with a sphere net of the
/// matching dimension; M = 1/(1-delta) holds for every lambda supported on
/// [1,N], because some optimal pattern of lambda has strictly alternating
/// differences and the net covers that direction. Cost grows steeply with N.
inline EmbeddingArtifact build_embedding_net(int N, double delta) {
    if (N < 1) throw std::invalid_argument("build_embedding_net: N must be >= 1");
    if (N > 12) throw std::invalid_argument("build_embedding_net: N > 12 (net size grows combinatorially)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("build_embedding_net: delta must lie in (0, 1)");

    EmbeddingArtifact art;
    art.N = N;
    art.mode = EmbeddingMode::net;
    art.delta = delta;
    art.M = 1.0 / (1.0 - delta);

    std::vector<std::vector<std::vector<double>>> nets;
    nets.reserve(static_cast<std::size_t>(N));
    for (int d = 1; d <= N; ++d) nets.push_back(detail::sphere_net(d, delta));

    // patterns in shortlex order: by size, then lexicographically
    const int positions = N + 1;
    auto emit = [&](const std::vector<int>& pattern) {
        const auto& net = nets[pattern.size() - 2];
        for (const auto& c : net) {
            art.functionals.push_back({IndexPattern(pattern), c});
        }
    };
    for (int size = 2; size <= positions; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
        for (;;) {
            emit(idx);
            int i = size - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == positions - (size - 1 - i)) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j) {
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }

    art.intervals.reserve(art.functionals.size());
    for (int k = 1; k <= static_cast<int>(art.functionals.size()); ++k) {
        art.intervals.push_back(detail::tent_interval(k));
    }
    art.finalize();
    return art;
}

}  // namespace james
