#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "avrisk/mc/oracle.hpp"

using namespace avrisk;
using namespace avrisk::mc;
using Catch::Approx;

namespace {
// Unit-level runs use fewer trials than the acceptance gate; comparisons are
// at 4 standard errors to keep flakiness negligible.
const SimConfig kQuick{.trials = 200'000, .seed = 42, .time_step = 0.01};
}  // namespace

TEST_CASE("rng streams are deterministic and trial-independent") {
    TrialRng a(7, 123), b(7, 123), c(7, 124);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    TrialRng a2(7, 123);
    for (int i = 0; i < 100; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);
    TrialRng u(1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK((x >= 0.0 && x < 1.0));
    }
}

TEST_CASE("stepped reach time matches closed forms") {
    // Pure braking, reachable.
    const double t = mc::detail::stepped_reach_time(10.0, 0.0, -4.0, 5.0, 0.01);
    const VehicleKinematics k{.speed = 10.0, .a_dec = 4.0};
    CHECK(t == Approx(*time_to_reach_decelerating(k, 5.0)).margin(1e-9));
    // Stops short.
    CHECK(mc::detail::stepped_reach_time(10.0, 0.0, -4.0, 20.0, 0.01) < 0.0);
    // Reaction phase then braking.
    const VehicleKinematics r{.speed = 10.0, .a_dec = 4.0, .reaction_time = 0.7};
    CHECK(mc::detail::stepped_reach_time(10.0, 0.7, -4.0, 9.0, 0.01) ==
          Approx(*reaction_delayed_reach_time(r, 9.0)).margin(1e-9));
    // Acceleration.
    const VehicleKinematics a{.speed = 5.0, .a_acc = 3.0};
    CHECK(mc::detail::stepped_reach_time(5.0, 0.0, 3.0, 12.0, 0.01) ==
          Approx(time_to_reach_accelerating(a, 12.0)).margin(1e-9));
    CHECK(mc::detail::stepped_reach_time(5.0, 0.0, 3.0, 0.0, 0.01) == 0.0);
}

TEST_CASE("left-turn oracle agrees with the arrival closed form") {
    const LeftTurnScenario s;
    const double d_min = stopping_distance(s.tmv);
    const double t_conf = (d_min - s.d_cz_occluded) / s.tmv.speed;
    const double rate = 0.1;
    const double closed = prob_at_least_one_arrival({rate}, t_conf);
    const auto est = simulate_left_turn_conflict(s, rate, kQuick);
    CHECK(std::abs(est.point - closed) <= 4.0 * est.std_error);
    CHECK(est.std_error == Approx(std::sqrt(est.point * (1.0 - est.point) / 2e5)).epsilon(1e-9));

    CHECK(simulate_left_turn_conflict(s, 0.0, kQuick).point == 0.0);

    // At the guaranteed-safe boundary speed every through vehicle stops short.
    LeftTurnScenario safe = s;
    safe.tmv.speed = guaranteed_safe_tmv_speed(s);
    CHECK(simulate_left_turn_conflict(safe, 0.2, kQuick).point == 0.0);
}

TEST_CASE("left-turn oracle is reproducible") {
    const LeftTurnScenario s;
    const auto a = simulate_left_turn_conflict(s, 0.1, {.trials = 50'000, .seed = 9});
    const auto b = simulate_left_turn_conflict(s, 0.1, {.trials = 50'000, .seed = 9});
    CHECK(a.point == b.point);
    const auto c = simulate_left_turn_conflict(s, 0.1, {.trials = 50'000, .seed = 10});
    CHECK(a.point != c.point);  // different seed, different sample
}

TEST_CASE("pedestrian oracle agrees with the window closed form") {
    for (auto kind : {PedestrianKind::ManeuverType1, PedestrianKind::ManeuverType2,
                      PedestrianKind::NoManeuver}) {
        const auto s = PedestrianScenario::defaults(kind);
        const double closed = conflict_probability(s);
        const auto est = simulate_pedestrian_conflict(s, kQuick);
        INFO("kind " << to_string(kind));
        CHECK(std::abs(est.point - closed) <= 4.0 * est.std_error);
    }
    auto quiet = PedestrianScenario::defaults(PedestrianKind::ManeuverType2);
    quiet.ped_rate = 0.0;
    CHECK(simulate_pedestrian_conflict(quiet, kQuick).point == 0.0);
    auto slow = PedestrianScenario::defaults(PedestrianKind::ManeuverType2);
    slow.av.speed = 5.0;  // braking stops short: no conflict possible
    CHECK(simulate_pedestrian_conflict(slow, kQuick).point == 0.0);
}

TEST_CASE("violation oracle agrees with the interval mass") {
    const ViolationGeometry g;
    const EmpiricalDistribution uniform = Histogram{{5.0, 15.0}, {1.0}};
    const auto est = simulate_violation_conflict(g, 10.0, 4.0, uniform, ConflictCase::A, kQuick);
    CHECK(std::abs(est.point - 0.907407) <= 4.0 * est.std_error);

    // Point mass inside the conflict interval always conflicts; outside never.
    const EmpiricalDistribution inside = Histogram{{9.99, 10.01}, {1.0}};
    CHECK(simulate_violation_conflict(g, 10.0, 4.0, inside, ConflictCase::A, kQuick).point == 1.0);
    const EmpiricalDistribution outside = Histogram{{2.0, 2.1}, {1.0}};
    CHECK(simulate_violation_conflict(g, 10.0, 4.0, outside, ConflictCase::A, kQuick).point == 0.0);

    // Case (b) with the normal start-up acceleration model.
    const EmpiricalDistribution accel = Normal{.mean = 1.5, .variance = 0.25};
    const auto eb = simulate_violation_conflict(g, 10.0, 8.0, accel, ConflictCase::B, kQuick);
    CHECK(std::abs(eb.point - 0.925286) <= 4.0 * eb.std_error);
}

TEST_CASE("merge oracle: boundary tightness and monotonicity") {
    for (double v : {9.68, 11.37, 13.29}) {
        const auto s = MergeScenario::at_lane_speed(v);
        for (auto mode : {MergeMode::WorstCase, MergeMode::SingleEvent}) {
            const double d_f = lead_safe_gap(s);
            const double d_b = mode == MergeMode::WorstCase ? lag_safe_gap_worst_case(s)
                                                            : lag_safe_gap_single_event(s);
            const auto at = simulate_merge(s, d_f, d_b, mode, kQuick);
            INFO("v " << v << " mode " << static_cast<int>(mode));
            CHECK_FALSE(at.collision);
            CHECK(at.min_separation >= -1e-9);
            CHECK(at.min_separation <= 0.05);

            const auto wide = simulate_merge(s, 2.0 * d_f + 1.0, 2.0 * d_b + 1.0, mode, kQuick);
            CHECK_FALSE(wide.collision);
            CHECK(wide.min_separation > 0.0);

            const auto tight = simulate_merge(s, 0.5 * d_f, 0.5 * d_b, mode, kQuick);
            if (d_f > 0.1 && d_b > 0.1) CHECK(tight.collision);
        }
    }
}

TEST_CASE("halving the time step barely moves the estimates") {
    const LeftTurnScenario s;
    const SimConfig coarse{.trials = 100'000, .seed = 3, .time_step = 0.01};
    SimConfig fine = coarse;
    fine.time_step = 0.005;
    const auto a = simulate_left_turn_conflict(s, 0.1, coarse);
    const auto b = simulate_left_turn_conflict(s, 0.1, fine);
    CHECK(std::abs(a.point - b.point) < 0.5 * a.std_error);
}
