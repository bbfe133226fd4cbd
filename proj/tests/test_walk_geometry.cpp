#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "monocone/cone_projection.hpp"
#include "monocone/rng.hpp"
#include "monocone/walk_geometry.hpp"
#include "oracle_helpers.hpp"

using monocone::ConvexMinorant;
using monocone::cumulative_sums;
using monocone::greatest_convex_minorant;
using monocone::Horizon;
using monocone::occupation_cdf;
using monocone::occupation_quantile;
using monocone::to_unit_interval;
using monocone::WalkPath;

namespace {

WalkPath unit_path(const std::vector<double>& increments) {
    return to_unit_interval(cumulative_sums(increments));
}

}  // namespace

TEST_CASE("cumulative sums build an anchored path") {
    const WalkPath path = cumulative_sums(std::vector<double>{1.0, -2.0, 1.0});
    REQUIRE(path.partial_sums == std::vector<double>{0.0, 1.0, -1.0, 0.0});
    REQUIRE(path.horizon == Horizon::unit_steps);
    REQUIRE(path.steps() == 3);
    REQUIRE(path.time_at(2) == 2.0);
    REQUIRE_THROWS_AS(cumulative_sums(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("unit-interval rescaling changes times only") {
    const WalkPath path = unit_path({1.0, -2.0, 1.0});
    REQUIRE(path.partial_sums == std::vector<double>{0.0, 1.0, -1.0, 0.0});
    REQUIRE(path.horizon == Horizon::unit_interval);
    REQUIRE(path.time_at(3) == 1.0);
    REQUIRE(path.time_at(1) == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("greatest convex minorant on fixed paths") {
    const ConvexMinorant flat = greatest_convex_minorant(cumulative_sums(std::vector<double>{3.0, 1.0, 2.0}));
    REQUIRE(flat.slopes == std::vector<double>{2.0, 2.0, 2.0});
    REQUIRE(flat.breakpoints == std::vector<std::size_t>{0, 3});
    REQUIRE(flat.value_at(0) == 0.0);
    REQUIRE(flat.value_at(3) == Catch::Approx(6.0));

    const ConvexMinorant dip = greatest_convex_minorant(cumulative_sums(std::vector<double>{1.0, -2.0, 1.0}));
    REQUIRE(dip.slopes.size() == 3);
    REQUIRE(dip.slopes[0] == Catch::Approx(-0.5));
    REQUIRE(dip.slopes[1] == Catch::Approx(-0.5));
    REQUIRE(dip.slopes[2] == Catch::Approx(1.0));
    REQUIRE(dip.breakpoints == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("minorant slopes equal the monotone projection on fuzz inputs") {
    monocone::SplitMix64 gen(0x1111u);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(gen.next_below(60));
        const std::vector<double> z = oracle::random_sequence(gen, n);
        CAPTURE(trial, n);
        const monocone::MonotoneFit fit = monocone::project_monotone(z);
        const WalkPath path = cumulative_sums(z);
        const ConvexMinorant gcm = greatest_convex_minorant(path);

        REQUIRE(gcm.slopes.size() == n);
        for (std::size_t k = 0; k < n; ++k)
            REQUIRE(std::fabs(gcm.slopes[k] - fit.fitted[k]) <= 1e-9);

        // touch points are exactly the block boundaries of the fit
        std::vector<std::size_t> boundaries{0};
        for (const auto& blk : fit.blocks) boundaries.push_back(blk.end);
        REQUIRE(gcm.breakpoints == boundaries);

        // it is a convex function lying below the diagram and touching it
        // at every breakpoint
        REQUIRE(std::is_sorted(gcm.slopes.begin(), gcm.slopes.end()));
        for (std::size_t k = 0; k <= n; ++k)
            REQUIRE(gcm.value_at(k) <= path.partial_sums[k] + 1e-9);
        for (const std::size_t b : gcm.breakpoints)
            REQUIRE(std::fabs(gcm.value_at(b) - path.partial_sums[b]) <= 1e-9);
    }
}

TEST_CASE("running averages and sorted copy") {
    const auto avg = monocone::running_averages(std::vector<double>{1.0, -2.0, 1.0});
    REQUIRE(avg.size() == 3);
    REQUIRE(avg[0] == 1.0);
    REQUIRE(avg[1] == Catch::Approx(-0.5));
    REQUIRE(avg[2] == Catch::Approx(0.0).margin(1e-18));
    const auto sorted = monocone::sorted_copy(avg);
    REQUIRE(std::is_sorted(sorted.begin(), sorted.end()));
    REQUIRE(sorted[0] == Catch::Approx(-0.5));
}

TEST_CASE("last argmin takes the final tie") {
    WalkPath ties;
    ties.partial_sums = {0.0, 0.0, 0.0};
    REQUIRE(monocone::last_argmin(ties) == 2);

    const WalkPath path = cumulative_sums(std::vector<double>{-1.0, 2.0});
    REQUIRE(monocone::last_argmin(path) == 1);
    REQUIRE(monocone::nonpositive_time(path) == 1);

    const WalkPath rise = cumulative_sums(std::vector<double>{1.0, 1.0});
    REQUIRE(monocone::last_argmin(rise) == 0);
    REQUIRE(monocone::nonpositive_time(rise) == 0);
}

TEST_CASE("argmin and occupation counters match the slope signs") {
    monocone::SplitMix64 gen(0x2222u);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(gen.next_below(20));
        const std::vector<double> z = oracle::random_sequence(gen, n);
        const WalkPath path = cumulative_sums(z);
        const std::size_t m = monocone::last_argmin(path);
        const std::size_t cnt = monocone::nonpositive_time(path);
        const std::vector<double> delta = monocone::project_monotone_minmax(z);
        const auto sorted_avg = monocone::sorted_copy(monocone::running_averages(z));
        CAPTURE(trial, n, m, cnt);
        for (std::size_t k = 1; k <= n; ++k) {
            // {k-th slope <= 0} iff {the walk's last minimum is at or after k}
            if (std::fabs(delta[k - 1]) > 1e-12)
                REQUIRE((delta[k - 1] <= 0.0) == (m >= k));
            // {k-th smallest average <= 0} iff {at least k nonpositive sums}
            if (std::fabs(sorted_avg[k - 1]) > 1e-12)
                REQUIRE((sorted_avg[k - 1] <= 0.0) == (cnt >= k));
        }
    }
}

TEST_CASE("occupation CDF of a fixed two-segment path") {
    WalkPath path;
    path.partial_sums = {0.0, 1.0, -1.0};
    path.horizon = Horizon::unit_interval;
    // S(t)/t is 2 on the first half and falls from 2 to -1 on the second,
    // so F(x) = 1 - 3/(x+4) on [-1,2) with an atom of mass 1/2 at x = 2.
    REQUIRE(occupation_cdf(path, -1.5) == 0.0);
    REQUIRE(occupation_cdf(path, -1.0) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(occupation_cdf(path, 0.0) == Catch::Approx(0.25));
    REQUIRE(occupation_cdf(path, 1.0) == Catch::Approx(0.4));
    REQUIRE(occupation_cdf(path, 2.0) == Catch::Approx(1.0));
    REQUIRE(occupation_cdf(path, 5.0) == 1.0);

    REQUIRE(occupation_quantile(path, 0.25) == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(occupation_quantile(path, 0.5) == Catch::Approx(2.0).margin(1e-9));
    REQUIRE(occupation_quantile(path, 0.75) == Catch::Approx(2.0).margin(1e-9));
    REQUIRE(occupation_quantile(path, 1.0) == Catch::Approx(2.0).margin(1e-9));

    const WalkPath steps = cumulative_sums(std::vector<double>{1.0, -2.0});
    REQUIRE_THROWS_AS(occupation_cdf(steps, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(occupation_quantile(path, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(occupation_quantile(path, 1.5), std::invalid_argument);
}

TEST_CASE("occupation CDF agrees with dense sampling") {
    monocone::SplitMix64 gen(0x3333u);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(gen.next_below(5));
        const WalkPath path = unit_path(oracle::random_sequence(gen, n));
        for (int probe = 0; probe < 5; ++probe) {
            const double x = 6.0 * gen.next_unit() - 3.0;
            const double exact = occupation_cdf(path, x);
            const double approx = oracle::occupation_cdf_dense(path, x, 500000);
            CAPTURE(trial, n, x);
            REQUIRE(std::fabs(exact - approx) <= 3e-3);
        }
    }
}

TEST_CASE("occupation quantile inverts the CDF") {
    monocone::SplitMix64 gen(0x4444u);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(gen.next_below(8));
        const WalkPath path = unit_path(oracle::random_sequence(gen, n));
        const double p = 0.05 + 0.95 * gen.next_unit();
        const double q = occupation_quantile(path, p);
        CAPTURE(trial, n, p, q);
        REQUIRE(occupation_cdf(path, q + 1e-8) >= p - 1e-9);
        REQUIRE(occupation_cdf(path, q - 1e-6) <= p + 1e-3);

        // the top quantile is the largest vertex ratio S_i / t_i
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i <= path.steps(); ++i)
            top = std::max(top, path.partial_sums[i] / path.time_at(i));
        REQUIRE(occupation_quantile(path, 1.0) == Catch::Approx(top).margin(1e-8));
    }
}

TEST_CASE("minorant slope at a percentile of unit time") {
    const WalkPath path = unit_path({1.0, -2.0, 1.0});
    REQUIRE(monocone::gcm_slope_at(path, 1.0 / 3.0) == Catch::Approx(-1.5));
    REQUIRE(monocone::gcm_slope_at(path, 0.2) == Catch::Approx(-1.5));
    REQUIRE(monocone::gcm_slope_at(path, 2.0 / 3.0) == Catch::Approx(-1.5));
    REQUIRE(monocone::gcm_slope_at(path, 0.9) == Catch::Approx(3.0));
    REQUIRE(monocone::gcm_slope_at(path, 1.0) == Catch::Approx(3.0));
    REQUIRE_THROWS_AS(monocone::gcm_slope_at(path, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(monocone::gcm_slope_at(path, 1.0001), std::invalid_argument);
    REQUIRE_THROWS_AS(monocone::gcm_slope_at(cumulative_sums(std::vector<double>{1.0}), 0.5),
                      std::invalid_argument);
}

TEST_CASE("unit-time slopes are the projection scaled by the step count") {
    monocone::SplitMix64 gen(0x5555u);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(gen.next_below(30));
        const std::vector<double> z = oracle::random_sequence(gen, n);
        const WalkPath path = unit_path(z);
        const std::vector<double> fitted = monocone::project_monotone(z).fitted;
        CAPTURE(trial, n);
        for (std::size_t k = 1; k <= n; ++k) {
            const double p = static_cast<double>(k) / static_cast<double>(n);
            const double expected = static_cast<double>(n) * fitted[k - 1];
            REQUIRE(std::fabs(monocone::gcm_slope_at(path, p) - expected) <=
                    1e-9 * static_cast<double>(n));
        }
    }
}
