#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "monocone/exact_formulas.hpp"

using namespace monocone;

TEST_CASE("harmonic numbers") {
    REQUIRE(harmonic(1) == 1.0);
    REQUIRE(harmonic(2) == 1.5);
    REQUIRE(harmonic(4) == Catch::Approx(25.0 / 12.0).epsilon(1e-15));
    REQUIRE(harmonic(50) == Catch::Approx(4.49920533832942506).epsilon(1e-15));
    REQUIRE(harmonic(100) == Catch::Approx(5.18737751763962026).epsilon(1e-15));
    REQUIRE_THROWS_AS(harmonic(0), std::invalid_argument);
    for (std::size_t n : {1u, 2u, 5u, 17u, 100u, 5000u})
        REQUIRE(harmonic(n) <= std::log(std::exp(1.0) * static_cast<double>(n)));
}

TEST_CASE("generalized harmonic numbers") {
    REQUIRE(generalized_harmonic(3, 2.0) == Catch::Approx(49.0 / 36.0).epsilon(1e-15));
    REQUIRE(generalized_harmonic(1, 7.5) == 1.0);
    for (std::size_t n : {1u, 3u, 10u, 100u})
        REQUIRE(generalized_harmonic(n, 1.0) == harmonic(n));
    REQUIRE(generalized_harmonic(4, 0.5) ==
            Catch::Approx(1.0 + 1.0 / std::sqrt(2.0) + 1.0 / std::sqrt(3.0) + 0.5)
                .epsilon(1e-15));
    REQUIRE_THROWS_AS(generalized_harmonic(0, 2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(generalized_harmonic(3, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(generalized_harmonic(3, -1.0), std::invalid_argument);
}

TEST_CASE("statistical dimension of the monotone cone") {
    REQUIRE(statistical_dimension(1) == 1.0);
    REQUIRE(statistical_dimension(100) == harmonic(100));
    REQUIRE(statistical_dimension(2, 0.5) == Catch::Approx(1.75).epsilon(1e-15));
    REQUIRE(statistical_dimension(50, 0.5) ==
            Catch::Approx(25.0 + 0.5 * harmonic(50)).epsilon(1e-15));
    REQUIRE(statistical_dimension(5, 1.0) == 5.0);
    // the permutation-exchangeable boundary value is feasible
    REQUIRE(statistical_dimension(5, -0.25) ==
            Catch::Approx(-1.25 + 1.25 * harmonic(5)).epsilon(1e-14));
    REQUIRE_THROWS_AS(statistical_dimension(5, -0.3), std::invalid_argument);
    REQUIRE_THROWS_AS(statistical_dimension(5, 1.1), std::invalid_argument);
    REQUIRE_THROWS_AS(statistical_dimension(0, 0.0), std::invalid_argument);

    REQUIRE(nonneg_statistical_dimension(100) == Catch::Approx(0.5 * harmonic(100)));
    REQUIRE(nonneg_statistical_dimension(2, 0.5) == Catch::Approx(0.875));
}

TEST_CASE("absolute moments of the standard gaussian") {
    REQUIRE(gaussian_abs_moment(1.0) == Catch::Approx(0.797884560802865).epsilon(1e-14));
    REQUIRE(gaussian_abs_moment(2.0) == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(gaussian_abs_moment(3.0) == Catch::Approx(1.59576912160573071).epsilon(1e-14));
    REQUIRE(gaussian_abs_moment(4.0) == Catch::Approx(3.0).epsilon(1e-14));
    REQUIRE_THROWS_AS(gaussian_abs_moment(0.0), std::invalid_argument);
}

TEST_CASE("gaussian p-norm targets for the projected noise") {
    REQUIRE(gaussian_lp_projection_norm(100, 2.0) == Catch::Approx(harmonic(100)).epsilon(1e-13));
    REQUIRE(gaussian_lp_projection_norm(50, 1.0) ==
            Catch::Approx(10.1749222841850595).epsilon(1e-13));
    REQUIRE(gaussian_lp_projection_norm(50, 3.0) ==
            Catch::Approx(3.71964172383868736).epsilon(1e-13));
    REQUIRE(gaussian_lp_projection_norm(50, 4.0) ==
            Catch::Approx(4.87539820086458793).epsilon(1e-13));
    REQUIRE(gaussian_lp_projection_norm(3, 4.0) == Catch::Approx(49.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("constant block decomposition") {
    REQUIRE(constant_block_lengths(std::vector<double>{0.0, 0.0, 1.0, 1.0, 1.0}) ==
            std::vector<std::size_t>{2, 3});
    REQUIRE(constant_block_lengths(std::vector<double>{1.0}) == std::vector<std::size_t>{1});
    REQUIRE(constant_block_lengths(std::vector<double>{1.0, 2.0, 2.0, 1.0}) ==
            std::vector<std::size_t>{1, 2, 1});
    REQUIRE(constant_piece_count(std::vector<double>{0.0, 0.0, 1.0, 1.0, 1.0}) == 2);
    REQUIRE(constant_piece_count(std::vector<double>{3.0}) == 1);
}

TEST_CASE("sharp block risk bound") {
    RiskBoundInput via_theta;
    via_theta.theta_star = RealSequence{0.0, 0.0, 1.0, 1.0, 1.0};
    REQUIRE(sharp_mse_block_bound(via_theta) ==
            Catch::Approx((harmonic(2) + harmonic(3)) / 5.0).epsilon(1e-15));

    RiskBoundInput via_blocks;
    via_blocks.block_lengths = {2, 3};
    via_blocks.n = 5;
    REQUIRE(sharp_mse_block_bound(via_blocks) == sharp_mse_block_bound(via_theta));

    via_blocks.sigma = 2.0;
    REQUIRE(sharp_mse_block_bound(via_blocks) ==
            Catch::Approx(4.0 * (harmonic(2) + harmonic(3)) / 5.0).epsilon(1e-15));

    RiskBoundInput flat;
    flat.theta_star = RealSequence{1.0, 1.0, 1.0};
    REQUIRE(sharp_mse_block_bound(flat) == Catch::Approx(harmonic(3) / 3.0));

    RiskBoundInput bad_order;
    bad_order.theta_star = RealSequence{1.0, 0.0};
    REQUIRE_THROWS_AS(sharp_mse_block_bound(bad_order), std::invalid_argument);

    RiskBoundInput mismatch;
    mismatch.block_lengths = {2, 2};
    mismatch.n = 5;
    REQUIRE_THROWS_AS(sharp_mse_block_bound(mismatch), std::invalid_argument);

    RiskBoundInput neither;
    REQUIRE_THROWS_AS(sharp_mse_block_bound(neither), std::invalid_argument);
}

TEST_CASE("logarithmic risk bound and oracle form") {
    REQUIRE(log_form_risk_bound(2, 10) == Catch::Approx(0.521887582486820075).epsilon(1e-15));
    REQUIRE(log_form_risk_bound(10, 10) == 1.0);
    REQUIRE(log_form_risk_bound(1, 1) == 1.0);
    REQUIRE_THROWS_AS(log_form_risk_bound(0, 10), std::invalid_argument);
    REQUIRE_THROWS_AS(log_form_risk_bound(11, 10), std::invalid_argument);
    REQUIRE_THROWS_AS(log_form_risk_bound(2, 10, 0.0), std::invalid_argument);

    const std::vector<double> theta_star{0.0, 1.0};
    const std::vector<RealSequence> candidates{{0.0, 1.0}, {0.5, 0.5}};
    REQUIRE(oracle_bound(theta_star, candidates, 1.0) == Catch::Approx(1.0).epsilon(1e-15));
    REQUIRE_THROWS_AS(oracle_bound(theta_star, {}, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(oracle_bound(theta_star, {{1.0, 0.0}}, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(oracle_bound(theta_star, {{1.0}}, 1.0), std::invalid_argument);
}
