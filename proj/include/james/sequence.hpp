#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace james {

/// A finitely supported real sequence, indexed from 1.
/// Entries beyond support_length() read as exactly 0.
class FiniteSequence {
public:
    FiniteSequence() = default;

    explicit FiniteSequence(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        for (double c : coeffs_) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("FiniteSequence: entries must be finite");
            }
        }
    }

    FiniteSequence(std::initializer_list<double> coeffs)
        : FiniteSequence(std::vector<double>(coeffs)) {}

    static FiniteSequence zeros(int n) {
        return FiniteSequence(std::vector<double>(static_cast<std::size_t>(n), 0.0));
    }

    /// The unit vector e_n.
    static FiniteSequence unit(int n) {
        if (n < 1) throw std::invalid_argument("FiniteSequence::unit: index must be >= 1");
        std::vector<double> c(static_cast<std::size_t>(n), 0.0);
        c.back() = 1.0;
        return FiniteSequence(std::move(c));
    }

    /// The partial-sum vector e_1 + ... + e_n.
    static FiniteSequence ones(int n) {
        if (n < 0) throw std::invalid_argument("FiniteSequence::ones: n must be >= 0");
        return FiniteSequence(std::vector<double>(static_cast<std::size_t>(n), 1.0));
    }

    /// The window vector e_{m+1} + ... + e_n (requires 0 <= m <= n).
    static FiniteSequence window(int m, int n) {
        if (m < 0 || n < m) throw std::invalid_argument("FiniteSequence::window: need 0 <= m <= n");
        std::vector<double> c(static_cast<std::size_t>(n), 0.0);
        for (int i = m; i < n; ++i) c[static_cast<std::size_t>(i)] = 1.0;
        return FiniteSequence(std::move(c));
    }

    /// Index of the last stored entry; entries beyond are 0.
    int support_length() const { return static_cast<int>(coeffs_.size()); }

    /// 1-based access; 0 beyond the stored support.
    double at(int i) const {
        if (i < 1) throw std::out_of_range("FiniteSequence::at: index must be >= 1");
        const auto k = static_cast<std::size_t>(i - 1);
        return k < coeffs_.size() ? coeffs_[k] : 0.0;
    }

    const std::vector<double>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (double c : coeffs_) {
            if (c != 0.0) return false;
        }
        return true;
    }

    bool operator==(const FiniteSequence&) const = default;

private:
    std::vector<double> coeffs_;
};

/// max_i |x_i|
inline double sup_norm(const FiniteSequence& x) {
    double m = 0.0;
    for (double c : x.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

/// Coordinate-wise product (a_n b_n); the shorter support suffices.
inline FiniteSequence star(const FiniteSequence& a, const FiniteSequence& b) {
    const int n = std::min(a.support_length(), b.support_length());
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(i - 1)] = a.at(i) * b.at(i);
    return FiniteSequence(std::move(c));
}

}  // namespace james
