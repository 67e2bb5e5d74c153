#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "avrisk/left_turn.hpp"
#include "avrisk/units.hpp"

using namespace avrisk;
using Catch::Approx;

TEST_CASE("guaranteed-safe through speed") {
    const LeftTurnScenario s;
    const double v = guaranteed_safe_tmv_speed(s);
    CHECK(v == Approx(7.3902).margin(1e-3));
    CHECK(mps_to_mph(v) == Approx(16.53).margin(0.05));
    // At the boundary the stopping distance equals the visibility distance.
    LeftTurnScenario at = s;
    at.tmv.speed = v;
    CHECK(stopping_distance(at.tmv) == Approx(s.d_cz_occluded).epsilon(1e-9));
}

TEST_CASE("sensitivity sweep over reaction time and deceleration") {
    const auto grid = sensitivity_sweep_fig2(LeftTurnScenario{}, {0.5, 0.7, 1.0}, {3.0, 4.0, 6.0});
    REQUIRE(grid.size() == 9);
    for (const auto& p : grid) {
        LeftTurnScenario s;
        s.tmv.reaction_time = p.rho;
        s.tmv.a_dec = p.a_dec;
        CHECK(p.v_max == guaranteed_safe_tmv_speed(s));
    }
    // Boundary speed falls with reaction time and rises with braking strength.
    CHECK(grid[0].v_max > grid[2].v_max);  // rho 0.5 vs 1.0 at a=3
    CHECK(grid[7].v_max > grid[4].v_max);  // a 6 vs 4 at rho 0.7
    CHECK_THROWS_AS(sensitivity_sweep_fig2(LeftTurnScenario{}, {}, {4.0}), std::invalid_argument);
}

TEST_CASE("waiting-time pipeline") {
    const RiskBudget budget{.p_coll_max = 1.4e-5, .alpha = 1e-4};
    const ConflictCollisionLink link{.gamma = kGammaOpposingLeftTurn};
    const auto r = waiting_time_pipeline(LeftTurnScenario{}, budget, link);
    REQUIRE(r.has_value());
    CHECK(r->d_min_cz == Approx(23.4364).margin(5e-3));
    CHECK(r->t_conf == Approx(1.0233).margin(1e-3));
    CHECK(r->lambda_max == Approx(0.020602).margin(1e-5));
    CHECK(r->t_obs == Approx(447.1).margin(0.5));

    // Slow enough traffic needs no waiting at all.
    LeftTurnScenario slow;
    slow.tmv.speed = 7.0;
    CHECK_FALSE(waiting_time_pipeline(slow, budget, link).has_value());
}

TEST_CASE("occluded view distance along the arc") {
    const LeftTurnScenario s;
    CHECK(*occluded_view_distance(0.0, s) == Approx(12.0));
    CHECK(*occluded_view_distance(0.5, s) == Approx(10.6066).margin(1e-3));

    // Independent geometric check at theta = 0.5: sight ray from the AV at
    // (R sin th, R cos th) through the occluder corner (d0, R - l_w), extended
    // to the through path y = R - 2 l_w; distance is measured beyond x = d0.
    const double th = 0.5;
    const double ax = s.turn_radius * std::sin(th), ay = s.turn_radius * std::cos(th);
    const double bx = s.d_cz_occluded, by = s.turn_radius - s.lane_width;
    const double slope = (by - ay) / (bx - ax);
    const double x_hit = bx + (s.turn_radius - 2.0 * s.lane_width - by) / slope;
    CHECK(*occluded_view_distance(th, s) == Approx(x_hit - s.d_cz_occluded).epsilon(1e-9));

    // Past the arc angle where the sight line parallels the lane, visibility
    // is unlimited.
    const double th_div = std::acos((s.turn_radius - s.lane_width) / s.turn_radius);
    CHECK_FALSE(occluded_view_distance(th_div + 1e-6, s).has_value());
    CHECK_THROWS_AS(occluded_view_distance(-0.1, s), std::invalid_argument);
}

TEST_CASE("theta_max reaches the stopping distance") {
    const LeftTurnScenario s;
    const double th = theta_max(s);
    CHECK(th == Approx(0.857).margin(5e-3));
    CHECK(*occluded_view_distance(th, s) == Approx(stopping_distance(s.tmv)).margin(1e-6));
}

TEST_CASE("evasive-maneuver window along the arc") {
    LeftTurnScenario s;  // AV reaction defaults to 0.7 here
    const auto r = evasive_theta_interval(s);
    REQUIRE(r.has_value());
    CHECK(r->unsafe_lo == Approx(0.4637).margin(0.01));
    CHECK(r->unsafe_hi == Approx(0.8115).margin(0.01));
    CHECK(r->waiting_time_factor == Approx(2.468).margin(0.05));
    // Inside the window both escapes fail; outside at least one works.
    CHECK_FALSE(detail::accel_escape_possible(0.5 * (r->unsafe_lo + r->unsafe_hi), s));
    CHECK(detail::accel_escape_possible(r->unsafe_hi + 0.01, s));

    // A much quicker turner escapes everywhere.
    LeftTurnScenario quick = s;
    quick.av.speed = 12.0;
    quick.av.a_acc = 8.0;
    quick.av.reaction_time = 0.0;
    CHECK(detail::accel_escape_possible(0.0, quick));
    CHECK_FALSE(evasive_theta_interval(quick).has_value());
}

TEST_CASE("left-turn properties", "[property]") {
    std::mt19937 gen(9107);
    std::uniform_real_distribution<double> rho(0.1, 2.0);
    std::uniform_real_distribution<double> a(1.0, 8.0);
    std::uniform_real_distribution<double> d(2.0, 40.0);
    for (int i = 0; i < 2000; ++i) {
        LeftTurnScenario s;
        s.tmv.reaction_time = rho(gen);
        s.tmv.a_dec = a(gen);
        s.d_cz_occluded = d(gen);
        const double v = guaranteed_safe_tmv_speed(s);
        CHECK(v > 0.0);
        // Defining property: stopping distance at v equals the sight distance.
        s.tmv.speed = v;
        CHECK(stopping_distance(s.tmv) == Approx(s.d_cz_occluded).epsilon(1e-9));
        // Any faster overruns it.
        s.tmv.speed = v * 1.01;
        CHECK(stopping_distance(s.tmv) > s.d_cz_occluded);
    }

    // d_CZ(theta) is strictly increasing where the geometry is sight-limited.
    // (Near theta = 0 the published formula dips first; the increasing branch
    // is the one the stopping-distance crossing lives on.)
    const LeftTurnScenario s;
    const double th_hi = theta_max(s);
    double prev = *occluded_view_distance(0.4, s);
    for (double th = 0.41; th <= th_hi + 1e-12; th += 0.01) {
        const double cur = *occluded_view_distance(th, s);
        CHECK(cur > prev);
        prev = cur;
    }
}
