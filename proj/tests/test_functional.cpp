#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "james/functional.hpp"
#include "james/rng.hpp"

using james::FiniteSequence;
using james::IndexPattern;
using james::NormVariant;
using james::PatternFunctional;

TEST_CASE("functional validation") {
    CHECK_NOTHROW(james::validate({IndexPattern{1, 3}, {1.0}}));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK_NOTHROW(james::validate({IndexPattern{1, 2, 5}, {r, -r}}));
    // too few indices
    CHECK_THROWS_AS(james::validate({IndexPattern{2}, {}}), std::invalid_argument);
    // wrong coefficient count
    CHECK_THROWS_AS(james::validate({IndexPattern{1, 2, 3}, {1.0}}), std::invalid_argument);
    // not unit l2
    CHECK_THROWS_AS(james::validate({IndexPattern{1, 2}, {0.5}}), std::invalid_argument);
}

TEST_CASE("evaluation by hand") {
    const PatternFunctional phi{IndexPattern{1, 3, 4}, {0.6, -0.8}};
    const FiniteSequence x{2.0, 9.0, -1.0, 5.0};
    // 0.6 (x_3 - x_1) - 0.8 (x_4 - x_3) = 0.6(-3) - 0.8(6)
    CHECK(james::eval_functional(phi, x) == Catch::Approx(-6.6));
    CHECK(james::eval_functional(phi, FiniteSequence{}) == 0.0);
}

TEST_CASE("optimal functional pinned examples") {
    const auto ones = james::optimal_functional(FiniteSequence::ones(5), NormVariant::differences_only);
    CHECK(ones.pattern == IndexPattern{1, 6});
    REQUIRE(ones.coefficients.size() == 1);
    CHECK(ones.coefficients[0] == Catch::Approx(-1.0));

    const auto e1 = james::optimal_functional(FiniteSequence::unit(1), NormVariant::differences_only);
    CHECK(e1.pattern == IndexPattern{1, 2});
    CHECK(e1.coefficients[0] == Catch::Approx(-1.0));

    const auto osc = james::optimal_functional(FiniteSequence{1.0, -1.0}, NormVariant::differences_only);
    CHECK(osc.pattern == IndexPattern{1, 2, 3});
    REQUIRE(osc.coefficients.size() == 2);
    CHECK(osc.coefficients[0] == Catch::Approx(-2.0 / std::sqrt(5.0)));
    CHECK(osc.coefficients[1] == Catch::Approx(1.0 / std::sqrt(5.0)));
}

TEST_CASE("optimal functional rejects zero vectors and the leading variant") {
    CHECK_THROWS_AS(james::optimal_functional(FiniteSequence::zeros(3), NormVariant::differences_only),
                    std::invalid_argument);
    CHECK_THROWS_AS(james::optimal_functional(FiniteSequence::ones(3), NormVariant::leading_term),
                    std::invalid_argument);
}

TEST_CASE("optimal functional norms its own vector and bounds all others") {
    james::Rng rng(4711);
    for (int t = 0; t < 200; ++t) {
        const FiniteSequence x = james::random_nonzero_sequence(rng, 12);
        const auto phi = james::optimal_functional(x, NormVariant::differences_only);
        CHECK_NOTHROW(james::validate(phi));
        const double norm = james::james_norm(x, NormVariant::differences_only).value;
        CHECK(james::eval_functional(phi, x) == Catch::Approx(norm).margin(1e-12));
        // Cauchy-Schwarz: |phi(y)| <= ||y||_J for any y
        const FiniteSequence y = james::random_sequence(rng, 12);
        CHECK(std::abs(james::eval_functional(phi, y)) <=
              james::james_norm(y, NormVariant::differences_only).value + 1e-12);
    }
}
