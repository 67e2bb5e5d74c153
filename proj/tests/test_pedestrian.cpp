#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "avrisk/pedestrian.hpp"

using namespace avrisk;
using Catch::Approx;

TEST_CASE("conflict windows for the three scenario kinds") {
    const auto t2 = conflict_window(PedestrianScenario::defaults(PedestrianKind::ManeuverType2));
    CHECK(t2.t_acc == Approx(0.532691).margin(1e-5));
    REQUIRE(t2.t_dec.has_value());
    CHECK(*t2.t_dec == Approx(0.775276).margin(1e-5));
    CHECK(t2.delta == Approx(1.0));
    CHECK(t2.window_length == Approx(0.757415).margin(1e-5));

    const auto t1 = conflict_window(PedestrianScenario::defaults(PedestrianKind::ManeuverType1));
    CHECK(t1.window_length == Approx(0.878395).margin(1e-5));

    const auto nm = conflict_window(PedestrianScenario::defaults(PedestrianKind::NoManeuver));
    CHECK(nm.window_length == Approx(0.957896).margin(1e-5));
}

TEST_CASE("conflict probabilities match the published targets") {
    CHECK(conflict_probability(PedestrianScenario::defaults(PedestrianKind::ManeuverType2)) ==
          Approx(0.0125).margin(2e-4));
    CHECK(conflict_probability(PedestrianScenario::defaults(PedestrianKind::ManeuverType1)) ==
          Approx(0.0145).margin(2e-4));
    CHECK(conflict_probability(PedestrianScenario::defaults(PedestrianKind::NoManeuver)) ==
          Approx(0.0158).margin(2e-4));
}

TEST_CASE("collision probability through the ratio bound") {
    const auto s = PedestrianScenario::defaults(PedestrianKind::NoManeuver);
    CHECK(collision_probability(s, {.gamma = kGammaPedestrianUpper}) ==
          Approx(2.8e-6).margin(5e-8));
}

TEST_CASE("unavoidable distance bands") {
    const auto t2 = unavoidable_ped_distance_band(
        PedestrianScenario::defaults(PedestrianKind::ManeuverType2));
    CHECK(t2.first == Approx(0.55).margin(0.01));
    CHECK(t2.second == Approx(2.07).margin(0.01));

    const auto t1 = unavoidable_ped_distance_band(
        PedestrianScenario::defaults(PedestrianKind::ManeuverType1));
    CHECK(t1.first == Approx(0.063).margin(0.01));
    CHECK(t1.second == Approx(1.82).margin(0.01));

    const auto nm = unavoidable_ped_distance_band(
        PedestrianScenario::defaults(PedestrianKind::NoManeuver));
    CHECK(nm.first == 0.0);  // braking enters later than accelerating minus delta
    CHECK(nm.second == Approx(1.68).margin(0.01));
}

TEST_CASE("braking that stops short removes the conflict entirely") {
    auto s = PedestrianScenario::defaults(PedestrianKind::ManeuverType2);
    s.av.speed = 5.0;  // stopping distance 3.125 m < 4 m
    const auto w = conflict_window(s);
    CHECK_FALSE(w.t_dec.has_value());
    CHECK(w.window_length == 0.0);
    CHECK(conflict_probability(s) == 0.0);
    CHECK_THROWS_AS(unavoidable_ped_distance_band(s), std::domain_error);
}

TEST_CASE("conflict probability sweep over AV speed") {
    const auto s = PedestrianScenario::defaults(PedestrianKind::ManeuverType2);
    const auto series = conflict_speed_sweep_fig6(s, {5.0, 6.71, 10.0});
    REQUIRE(series.size() == 3);
    CHECK(series[0].probability == 0.0);  // stops short at 5 m/s
    CHECK(series[1].probability == Approx(0.012544).margin(1e-5));
    CHECK(series[2].probability == Approx(0.015545).margin(1e-5));
    CHECK(series[1].kind == PedestrianKind::ManeuverType2);
}

TEST_CASE("pedestrian properties", "[property]") {
    std::mt19937 gen(5513);
    std::uniform_real_distribution<double> speed(1.0, 20.0);
    std::uniform_real_distribution<double> dist(0.5, 15.0);
    for (int i = 0; i < 2000; ++i) {
        PedestrianScenario s;
        s.av.speed = speed(gen);
        s.d_veh_to_crash = dist(gen);
        const auto w = conflict_window(s);
        CHECK(w.window_length >= 0.0);
        if (w.t_dec) {
            // Accelerating always arrives no later than braking.
            CHECK(w.t_acc <= *w.t_dec + 1e-12);
            CHECK(w.window_length <= w.delta + (*w.t_dec - w.t_acc) + 1e-12);
        }
        const double p = conflict_probability(s);
        CHECK((p >= 0.0 && p <= 1.0));
        // More pedestrians per second: higher conflict probability.
        PedestrianScenario busy = s;
        busy.ped_rate = s.ped_rate * 3.0;
        CHECK(conflict_probability(busy) >= p);
        if (w.window_length > 0.0) {
            const auto [lo, hi] = unavoidable_ped_distance_band(s);
            CHECK(lo >= 0.0);
            CHECK(hi > lo);
        }
    }
}
