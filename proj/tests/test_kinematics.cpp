#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "avrisk/kinematics.hpp"

using namespace avrisk;
using Catch::Approx;

TEST_CASE("stopping distance") {
    CHECK(stopping_distance({.speed = 11.18, .a_dec = 4.0, .reaction_time = 0.7}) ==
          Approx(23.45).margin(0.005));
    CHECK(stopping_distance({.speed = 0.0, .reaction_time = 1.2}) == 0.0);
    CHECK(stopping_distance({.speed = 10.0, .a_dec = 5.0, .reaction_time = 0.0}) == Approx(10.0));
}

TEST_CASE("time to reach while accelerating") {
    const VehicleKinematics k{.speed = 6.71, .a_acc = 3.0};
    CHECK(time_to_reach_accelerating(k, 4.0) == Approx(0.533).margin(0.001));
    CHECK(time_to_reach_accelerating(k, 0.0) == 0.0);
    CHECK(time_to_reach_accelerating({.speed = 0.0, .a_acc = 2.0}, 4.0) == Approx(2.0));
}

TEST_CASE("time to reach while decelerating") {
    const VehicleKinematics k{.speed = 6.71, .a_dec = 4.0};
    REQUIRE(time_to_reach_decelerating(k, 4.0).has_value());
    CHECK(*time_to_reach_decelerating(k, 4.0) == Approx(0.776).margin(0.001));
    CHECK_FALSE(time_to_reach_decelerating({.speed = 10.0, .a_dec = 4.0}, 20.0).has_value());
    CHECK(*time_to_reach_decelerating(k, 0.0) == 0.0);
}

TEST_CASE("reaction-delayed reach time") {
    const VehicleKinematics k{.speed = 11.18, .a_dec = 4.0, .reaction_time = 0.7};
    // At exactly the stopping distance the vehicle counts as stopped short.
    CHECK_FALSE(reaction_delayed_reach_time(k, stopping_distance(k)).has_value());
    CHECK(*reaction_delayed_reach_time(k, 0.0) == 0.0);
    CHECK(*reaction_delayed_reach_time({.speed = 10.0, .a_dec = 4.0, .reaction_time = 1.0}, 5.0) ==
          Approx(0.5));
}

TEST_CASE("kinematics properties", "[property]") {
    std::mt19937 gen(7101);
    std::uniform_real_distribution<double> speed(0.5, 40.0);
    std::uniform_real_distribution<double> accel(0.5, 8.0);
    std::uniform_real_distribution<double> dist(0.0, 200.0);
    std::uniform_real_distribution<double> rho(0.0, 3.0);

    for (int i = 0; i < 2000; ++i) {
        VehicleKinematics k{.speed = speed(gen), .a_acc = accel(gen), .a_dec = accel(gen),
                            .reaction_time = rho(gen)};
        const double d = dist(gen);

        // Monotone in distance, antitone in speed and acceleration.
        const double t = time_to_reach_accelerating(k, d);
        CHECK(time_to_reach_accelerating(k, d + 1.0) > t);
        VehicleKinematics faster = k;
        faster.speed += 1.0;
        if (d > 0.0) CHECK(time_to_reach_accelerating(faster, d) < t);
        VehicleKinematics harder = k;
        harder.a_acc += 1.0;
        if (d > 0.0) CHECK(time_to_reach_accelerating(harder, d) < t);

        // Accelerating gets there no later than decelerating.
        if (const auto td = time_to_reach_decelerating(k, d)) CHECK(t <= *td + 1e-12);

        // Round-trip: d == v t + a t^2 / 2 to 1e-9 relative error.
        const double back = k.speed * t + 0.5 * k.a_acc * t * t;
        CHECK(back == Approx(d).epsilon(1e-9).margin(1e-9));

        // Stopped iff d >= stopping distance (boundary inclusive).
        const double ds = stopping_distance(k);
        CHECK(reaction_delayed_reach_time(k, d).has_value() == (d < ds));
        CHECK_FALSE(reaction_delayed_reach_time(k, ds).has_value());
        if (ds > 1e-6) CHECK(reaction_delayed_reach_time(k, ds * (1.0 - 1e-9)).has_value());
    }
}

TEST_CASE("invalid kinematics rejected") {
    CHECK_THROWS_AS((VehicleKinematics{.speed = -1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((VehicleKinematics{.a_dec = 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(time_to_reach_accelerating({.speed = 1.0}, -1.0), std::invalid_argument);
}
