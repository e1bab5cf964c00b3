#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>

#include "james/build.hpp"
#include "james/counterexample.hpp"
#include "james/rng.hpp"

using james::CounterexampleSystem;
using james::FiniteSequence;
using james::Region;
using james::RegionTag;
using james::SquarePoint;

namespace {

const CounterexampleSystem& standard_system() {
    static const CounterexampleSystem sys = [] {
        james::RunConfig config;
        config.n = 8;
        config.seed = 42;
        return CounterexampleSystem(james::standard_build(config));
    }();
    return sys;
}

}  // namespace

TEST_CASE("region membership uses exact dyadic comparisons") {
    CHECK(james::region_contains(Region(RegionTag::L_n, 2), {0.7, 0.25}));
    CHECK_FALSE(james::region_contains(Region(RegionTag::R_n, 2), {0.7, 0.25}));
    CHECK(james::region_contains(Region(RegionTag::K_n, 2), {0.7, 0.25}));
    CHECK(james::region_contains(Region(RegionTag::R_n, 2), {0.7, std::nextafter(0.25, 1.0)}));
    CHECK_FALSE(james::region_contains(Region(RegionTag::K_n, 2), {0.7, std::nextafter(0.25, 0.0)}));
    CHECK(james::region_contains(Region(RegionTag::L), {0.3, 0.0}));
    CHECK_FALSE(james::region_contains(Region(RegionTag::U), {0.3, 0.0}));
    CHECK(james::region_contains(Region(RegionTag::U), {0.3, 1e-300}));
    CHECK(james::region_contains(Region(RegionTag::K), {1.0, 1.0}));
    // outside the square nothing contains the point
    CHECK_FALSE(james::region_contains(Region(RegionTag::K), {1.2, 0.5}));
    CHECK_FALSE(james::region_contains(Region(RegionTag::U), {0.5, 1.5}));
}

TEST_CASE("region construction validates the index") {
    CHECK_THROWS_AS(Region(RegionTag::K_n, 0), std::invalid_argument);
    CHECK_THROWS_AS(Region(RegionTag::L_n, -1), std::invalid_argument);
    CHECK_THROWS_AS(Region(RegionTag::K, 3), std::invalid_argument);
    CHECK_NOTHROW(Region(RegionTag::R_n, 5));
}

TEST_CASE("eval_g: defining clauses, exact agreement at the seam") {
    const auto& sys = standard_system();
    const auto& art = sys.art;
    for (int n = 1; n <= sys.N(); ++n) {
        const double bn = std::ldexp(1.0, -n);
        for (std::size_t k = 0; k < art.intervals.size(); ++k) {
            const double a = art.intervals[k].center;
            const double fn = james::eval_f(art, n, a);
            CHECK(james::eval_g(sys, n, {a, bn}) == 0.0);          // on L_n
            CHECK(james::eval_g(sys, n, {a, 1.0}) == 0.0);         // top edge
            CHECK(james::eval_g(sys, n, {a, 0.0}) == fn);          // bottom edge
            CHECK(james::eval_g(sys, n, {a, bn / 2.0}) == 0.5 * fn);  // midpoint, exact
            // continuity across the seam: just below b = 2^-n the value is tiny
            const double below = std::nextafter(bn, 0.0);
            CHECK(std::abs(james::eval_g(sys, n, {a, below})) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(james::eval_g(sys, 0, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(james::eval_g(sys, 9, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(james::eval_g(sys, 1, {1.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(james::eval_g(sys, 1, {0.5, -0.1}), std::invalid_argument);
}

TEST_CASE("eval_combination: vanishes above the first line, matches term sums") {
    const auto& sys = standard_system();
    james::Rng rng(91);
    for (int t = 0; t < 100; ++t) {
        const FiniteSequence lambda = james::random_sequence(rng, sys.N());
        const double a = rng.next_unit();
        // identically zero for b >= 1/2
        CHECK(james::eval_combination(sys, lambda, {a, 0.5}) == 0.0);
        CHECK(james::eval_combination(sys, lambda, {a, 0.77}) == 0.0);
        CHECK(james::eval_combination(sys, lambda, {a, 1.0}) == 0.0);
        // generic point: equals the sum of the single terms
        const double b = rng.next_unit();
        double direct = 0.0;
        for (int i = 1; i <= sys.N(); ++i) direct += lambda.at(i) * james::eval_g(sys, i, {a, b});
        CHECK(std::abs(james::eval_combination(sys, lambda, {a, b}) - direct) <= 1e-12);
    }
    // e_1 on the bottom edge is f_1
    const double a0 = sys.art.intervals[0].center;
    CHECK(james::eval_combination(sys, FiniteSequence::unit(1), {a0, 0.0}) ==
          james::eval_f(sys.art, 1, a0));
    CHECK(james::eval_combination(sys, FiniteSequence::zeros(8), {0.3, 0.1}) == 0.0);
}

TEST_CASE("midline coefficients: pinned dyadic factors") {
    const auto& sys = standard_system();
    const auto mc2 = james::midline_coefficients(sys, 2, FiniteSequence::ones(8));
    REQUIRE(mc2.support_length() == 1);
    CHECK(mc2.at(1) == 0.5);
    const auto mc3 = james::midline_coefficients(sys, 3, FiniteSequence::ones(8));
    REQUIRE(mc3.support_length() == 2);
    CHECK(mc3.at(1) == 0.75);
    CHECK(mc3.at(2) == 0.5);
    CHECK(james::midline_coefficients(sys, 4, FiniteSequence::zeros(8)).is_zero());
    CHECK_THROWS_AS(james::midline_coefficients(sys, 1, FiniteSequence::ones(8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(james::midline_coefficients(sys, 9, FiniteSequence::ones(8)),
                    std::invalid_argument);
}

TEST_CASE("midline identity on the lines b = 2^-k") {
    const auto& sys = standard_system();
    james::Rng rng(92);
    double worst = 0.0;
    for (int k = 2; k <= sys.N(); ++k) {
        const double b = std::ldexp(1.0, -k);
        for (int t = 0; t < 20; ++t) {
            const FiniteSequence lambda = james::random_sequence(rng, sys.N());
            const FiniteSequence mc = james::midline_coefficients(sys, k, lambda);
            for (int s = 0; s < 100; ++s) {
                const double a = rng.next_unit();
                double direct = 0.0;
                for (int i = 1; i <= mc.support_length(); ++i) {
                    direct += mc.at(i) * james::eval_f(sys.art, i, a);
                }
                worst = std::max(worst, std::abs(james::eval_combination(sys, lambda, {a, b}) - direct));
            }
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("decreasing-coefficients fact") {
    const auto& sys = standard_system();
    for (int k = 2; k <= sys.N(); ++k) {
        const FiniteSequence mc = james::midline_coefficients(sys, k, FiniteSequence::ones(8));
        for (int i = 1; i < mc.support_length(); ++i) CHECK(mc.at(i) >= mc.at(i + 1));
        const double norm = james::james_norm(mc, james::NormVariant::differences_only).value;
        CHECK(std::abs(norm - mc.at(1)) <= 1e-12);
    }
}

TEST_CASE("exact sup-norm: pinned cases") {
    // N = 1 probe-exact embedding of e_1: sup attained on the bottom edge
    const auto art1 = james::build_embedding_probe_exact(1, {FiniteSequence::unit(1)});
    const CounterexampleSystem sys1(art1);
    CHECK(james::sup_norm_exact(sys1, FiniteSequence::unit(1)) == Catch::Approx(1.0).margin(1e-12));
    const auto& sys = standard_system();
    CHECK(james::sup_norm_exact(sys, FiniteSequence::zeros(8)) == 0.0);
}

TEST_CASE("exact sup-norm dominates every sampled value and the grid agrees") {
    const auto& sys = standard_system();
    james::Rng rng(93);
    for (int t = 0; t < 10; ++t) {
        const FiniteSequence lambda = james::random_nonzero_sequence(rng, sys.N());
        const double exact = james::sup_norm_exact(sys, lambda);
        for (int s = 0; s < 500; ++s) {
            const SquarePoint pt{rng.next_unit(), rng.next_unit()};
            CHECK(std::abs(james::eval_combination(sys, lambda, pt)) <= exact + 1e-12);
        }
        const auto gc = james::grid_cross_check(sys, lambda, 64);
        CHECK(gc.pass);
        CHECK(gc.grid_max <= gc.exact + 1e-9);
        CHECK(gc.exact <= gc.grid_max + gc.slack + 1e-9);
    }
}

TEST_CASE("stabilization index: pinned values and infinity on L") {
    CHECK(james::stabilization_index({0.1, 0.5}) == 1);
    CHECK(james::stabilization_index({0.1, 0.3}) == 2);
    CHECK(james::stabilization_index({0.1, 1.0}) == 1);
    CHECK(james::stabilization_index({0.1, 0.25}) == 2);
    CHECK(james::stabilization_index({0.1, std::nextafter(0.25, 0.0)}) == 3);
    CHECK(james::stabilization_index({0.1, 0.0}) == std::nullopt);
    CHECK_THROWS_AS(james::stabilization_index({0.1, 1.25}), std::invalid_argument);
}

TEST_CASE("pointwise stabilization holds at sampled points of U") {
    const auto& sys = standard_system();
    james::Rng rng(94);
    for (int t = 0; t < 300; ++t) {
        SquarePoint u{rng.next_unit(), 0.0};
        do {
            u.b = rng.next_unit();
        } while (u.b == 0.0);
        const auto rep = james::check_stabilization(sys, u);
        CHECK(rep.pass);
        CHECK(rep.nonzero_increments <= rep.index);
    }
    CHECK_THROWS_AS(james::check_stabilization(sys, {0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("sandwich passes for probes, windows, and the audited population") {
    const auto& sys = standard_system();
    for (const auto& entry : sys.art.audit) {
        const auto rep = james::verify_sandwich(sys, entry.vector);
        CHECK(rep.pass);
        CHECK(rep.m_source == "audited");
        CHECK(rep.lower <= rep.sup + 1e-9);
        CHECK(rep.sup <= rep.upper + 1e-9);
    }
    const auto zero = james::verify_sandwich(sys, FiniteSequence::zeros(8));
    CHECK(zero.pass);
    CHECK(zero.sup == 0.0);
    CHECK(zero.upper == 0.0);
}

TEST_CASE("sandwich on a net artifact holds for arbitrary vectors") {
    const auto art = james::build_embedding_net(4, 0.25);
    const CounterexampleSystem sys(art);
    james::Rng rng(95);
    for (int t = 0; t < 200; ++t) {
        const auto rep = james::verify_sandwich(sys, james::random_sequence(rng, 4));
        CHECK(rep.pass);
        CHECK(rep.m_source == "certified");
    }
}

TEST_CASE("tampered M makes the sandwich fail") {
    auto art = standard_system().art;
    art.M = 0.1;
    const CounterexampleSystem sys(art);
    CHECK_FALSE(james::verify_sandwich(sys, FiniteSequence::ones(8)).pass);
}

TEST_CASE("partial-sum battery") {
    const auto& sys = standard_system();
    const auto rep = james::verify_partial_sums(sys, 42, 64);
    CHECK(rep.pass);
    CHECK(rep.pass_uniform);
    CHECK(rep.pass_stabilization);
    CHECK(rep.pass_noncauchy);
    CHECK(rep.pass_weak_cauchy);
    REQUIRE(rep.partial_sup_norms.size() == 8);
    for (double s : rep.partial_sup_norms) {
        CHECK(s <= rep.uniform_bound + 1e-9);
        CHECK(s > 0.0);
    }
    CHECK(rep.min_noncauchy >= rep.noncauchy_bound - 1e-9);
    CHECK(rep.m_source == "audited");
}

TEST_CASE("effective constant source tracks the mode") {
    CHECK(james::effective_m(standard_system().art).source == "audited");
    CHECK(james::effective_m(james::build_embedding_net(2, 0.5)).source == "certified");
    CHECK(james::effective_m(james::build_embedding_net(2, 0.5)).value == Catch::Approx(2.0));
}
