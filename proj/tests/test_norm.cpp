#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "james/norm.hpp"
#include "james/rng.hpp"
#include "james/sequence.hpp"

using james::FiniteSequence;
using james::IndexPattern;
using james::NormVariant;

namespace {
constexpr NormVariant kDiff = NormVariant::differences_only;
constexpr NormVariant kLead = NormVariant::leading_term;
}  // namespace

TEST_CASE("index pattern validation") {
    CHECK_NOTHROW(IndexPattern{1, 4, 9});
    CHECK_THROWS_AS(IndexPattern{0, 1}, std::invalid_argument);
    CHECK_THROWS_AS(IndexPattern{2, 2}, std::invalid_argument);
    CHECK_THROWS_AS(IndexPattern{3, 1}, std::invalid_argument);
}

TEST_CASE("pattern value by hand") {
    const FiniteSequence x{1.0, -1.0, 0.5};
    // differences over (1,2,4): (-1-1)^2 + (0-(-1))^2 = 5
    CHECK(james::pattern_value(x, IndexPattern{1, 2, 4}, kDiff) == Catch::Approx(std::sqrt(5.0)));
    // leading term adds x_1^2 = 1
    CHECK(james::pattern_value(x, IndexPattern{1, 2, 4}, kLead) == Catch::Approx(std::sqrt(6.0)));
    CHECK(james::pattern_value(x, IndexPattern{}, kDiff) == 0.0);
    // single index: only the leading term can contribute
    CHECK(james::pattern_value(x, IndexPattern{2}, kDiff) == 0.0);
    CHECK(james::pattern_value(x, IndexPattern{2}, kLead) == 1.0);
}

TEST_CASE("pinned norm examples") {
    // geometric decay: monotone, norm = first entry, tail pattern
    const auto geo = james::james_norm(FiniteSequence{1.0, 0.5, 0.25}, kDiff);
    CHECK(geo.value == Catch::Approx(1.0).margin(1e-15));
    CHECK(geo.optimal_pattern == IndexPattern{1, 4});

    const auto osc = james::james_norm(FiniteSequence{1.0, -1.0}, kDiff);
    CHECK(osc.value == Catch::Approx(std::sqrt(5.0)));
    CHECK(osc.optimal_pattern == IndexPattern{1, 2, 3});

    const auto e1d = james::james_norm(FiniteSequence::unit(1), kDiff);
    CHECK(e1d.value == Catch::Approx(1.0).margin(1e-15));
    CHECK(e1d.optimal_pattern == IndexPattern{1, 2});

    const auto e1l = james::james_norm(FiniteSequence::unit(1), kLead);
    CHECK(e1l.value == Catch::Approx(std::sqrt(2.0)));

    CHECK(james::james_norm(FiniteSequence{}, kDiff).value == 0.0);
    CHECK(james::james_norm(FiniteSequence::zeros(4), kLead).value == 0.0);
}

TEST_CASE("shortlex tie-break: all-ones takes the tail jump") {
    for (int n : {1, 2, 5, 9}) {
        const auto r = james::james_norm(FiniteSequence::ones(n), kDiff);
        CHECK(r.value == Catch::Approx(1.0).margin(1e-15));
        CHECK(r.optimal_pattern == IndexPattern{1, n + 1});
    }
}

TEST_CASE("unit vectors under differences_only") {
    for (int n : {1, 2, 3, 6}) {
        const auto r = james::james_norm(FiniteSequence::unit(n), kDiff);
        // e_n rises and falls: two unit differences over any pattern through n
        CHECK(r.value == Catch::Approx(std::sqrt(n == 1 ? 1.0 : 2.0)));
    }
}

TEST_CASE("monotone one-signed sequences have norm |x_1| (differences_only)") {
    james::Rng rng(2024);
    for (int t = 0; t < 200; ++t) {
        const FiniteSequence x = james::random_monotone_sequence(rng, 15);
        const double v = james::james_norm(x, kDiff).value;
        CHECK(std::abs(v - std::abs(x.at(1))) <= 1e-12);
    }
}

TEST_CASE("DP equals brute force on random vectors") {
    james::Rng rng(77);
    for (int t = 0; t < 300; ++t) {
        const FiniteSequence x = james::random_sequence(rng, 10);
        for (NormVariant v : {kDiff, kLead}) {
            const double dp = james::james_norm(x, v).value;
            const double bf = james::james_norm_bruteforce(x, v);
            CHECK(std::abs(dp - bf) <= 1e-12 * std::max(1.0, bf));
        }
    }
}

TEST_CASE("DP value is attained by its own optimal pattern") {
    james::Rng rng(78);
    for (int t = 0; t < 200; ++t) {
        const FiniteSequence x = james::random_sequence(rng, 14);
        for (NormVariant v : {kDiff, kLead}) {
            const auto r = james::james_norm(x, v);
            CHECK(james::pattern_value(x, r.optimal_pattern, v) == Catch::Approx(r.value).margin(1e-12));
        }
    }
}

TEST_CASE("norm properties: homogeneity, triangle, domination") {
    james::Rng rng(79);
    for (int t = 0; t < 150; ++t) {
        const FiniteSequence x = james::random_sequence(rng, 12);
        const FiniteSequence y = james::random_sequence(rng, 12);
        const double alpha = rng.next_pm1() * 3.0;
        std::vector<double> sx(x.coeffs());
        for (double& c : sx) c *= alpha;
        const int n = std::max(x.support_length(), y.support_length());
        std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
        for (int i = 1; i <= n; ++i) sum[static_cast<std::size_t>(i - 1)] = x.at(i) + y.at(i);
        for (NormVariant v : {kDiff, kLead}) {
            const double nx = james::james_norm(x, v).value;
            const double ny = james::james_norm(y, v).value;
            CHECK(james::james_norm(FiniteSequence(sx), v).value ==
                  Catch::Approx(std::abs(alpha) * nx).margin(1e-11));
            CHECK(james::james_norm(FiniteSequence(sum), v).value <= nx + ny + 1e-12);
            CHECK(james::sup_norm(x) <= nx + 1e-12);
        }
    }
}

TEST_CASE("norm dominates every pattern value") {
    james::Rng rng(80);
    for (int t = 0; t < 100; ++t) {
        const FiniteSequence x = james::random_sequence(rng, 12);
        // random strictly increasing pattern inside [1, support+1]
        std::vector<int> idx;
        for (int j = 1; j <= x.support_length() + 1; ++j) {
            if (rng.next_u64() % 2 == 0) idx.push_back(j);
        }
        if (idx.size() < 2) continue;
        for (NormVariant v : {kDiff, kLead}) {
            CHECK(james::pattern_value(x, IndexPattern(idx), v) <=
                  james::james_norm(x, v).value + 1e-12);
        }
    }
}

TEST_CASE("variant sandwich") {
    james::Rng rng(81);
    for (int t = 0; t < 500; ++t) {
        const FiniteSequence x = james::random_sequence(rng, 16);
        const double d = james::james_norm(x, kDiff).value;
        const double l = james::james_norm(x, kLead).value;
        CHECK(d <= l + 1e-12);
        CHECK(l <= std::sqrt(2.0) * d + 1e-12);
    }
}

TEST_CASE("lemma 1 gap is nonnegative") {
    // pinned: a = b = e_1 -> a*b = e_1, gap = 1*1 + 1*1 - 1 = 1 (differences_only)
    CHECK(james::lemma1_gap(FiniteSequence::unit(1), FiniteSequence::unit(1), kDiff) ==
          Catch::Approx(1.0));
    james::Rng rng(82);
    for (int t = 0; t < 500; ++t) {
        const FiniteSequence a = james::random_sequence(rng, 14);
        const FiniteSequence b = james::random_sequence(rng, 14);
        for (NormVariant v : {kDiff, kLead}) {
            CHECK(james::lemma1_gap(a, b, v) >= -1e-12);
        }
    }
}

TEST_CASE("brute force rejects large supports") {
    CHECK_THROWS_AS(james::james_norm_bruteforce(FiniteSequence::ones(21), kDiff),
                    std::invalid_argument);
    CHECK_NOTHROW(james::james_norm_bruteforce(FiniteSequence::ones(12), kDiff));
}

TEST_CASE("variant spellings") {
    CHECK(james::variant_from_string("diff") == kDiff);
    CHECK(james::variant_from_string("differences_only") == kDiff);
    CHECK(james::variant_from_string("lead") == kLead);
    CHECK(james::variant_from_string("leading-term") == kLead);
    CHECK_THROWS_AS(james::variant_from_string("bogus"), std::invalid_argument);
}
