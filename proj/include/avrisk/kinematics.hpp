#ifndef AVRISK_KINEMATICS_HPP
#define AVRISK_KINEMATICS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

// Constant-acceleration motion primitives shared by all scenario engines.

namespace avrisk {

struct VehicleKinematics {
    double speed = 0.0;          // m/s, current speed
    double a_acc = 3.0;          // m/s^2, maximum acceleration
    double a_dec = 4.0;          // m/s^2, maximum deceleration (magnitude)
    double reaction_time = 0.0;  // s, perception + response + device delay
    double length = 4.0;         // m
    double width = 2.0;          // m

    void validate() const {
        if (!(std::isfinite(speed) && std::isfinite(a_acc) && std::isfinite(a_dec) &&
              std::isfinite(reaction_time) && std::isfinite(length) && std::isfinite(width)))
            throw std::invalid_argument("VehicleKinematics: non-finite field");
        if (speed < 0.0) throw std::invalid_argument("VehicleKinematics: speed < 0");
        if (a_acc <= 0.0 || a_dec <= 0.0)
            throw std::invalid_argument("VehicleKinematics: accel limits must be > 0");
        if (reaction_time < 0.0) throw std::invalid_argument("VehicleKinematics: reaction_time < 0");
        if (length <= 0.0 || width <= 0.0)
            throw std::invalid_argument("VehicleKinematics: dimensions must be > 0");
    }
};

/// Reaction travel plus braking distance: v*rho + v^2 / (2*a_dec).
inline double stopping_distance(const VehicleKinematics& k) {
    return k.speed * k.reaction_time + k.speed * k.speed / (2.0 * k.a_dec);
}

/// Time to cover `distance` while accelerating at a_acc from the current speed.
/// Positive root of d = v t + a t^2 / 2, written in the cancellation-free form
/// t = 2d / (sqrt(v^2 + 2 a d) + v).
inline double time_to_reach_accelerating(const VehicleKinematics& k, double distance) {
    if (distance < 0.0) throw std::invalid_argument("time_to_reach_accelerating: distance < 0");
    if (distance == 0.0) return 0.0;
    return 2.0 * distance / (std::sqrt(k.speed * k.speed + 2.0 * k.a_acc * distance) + k.speed);
}

/// Time to cover `distance` while braking at a_dec (smaller root of
/// d = v t - a t^2 / 2), or nullopt if the vehicle stops short of it.
inline std::optional<double> time_to_reach_decelerating(const VehicleKinematics& k,
                                                        double distance) {
    if (distance < 0.0) throw std::invalid_argument("time_to_reach_decelerating: distance < 0");
    if (distance == 0.0) return 0.0;
    const double disc = k.speed * k.speed - 2.0 * k.a_dec * distance;
    if (disc < 0.0) return std::nullopt;  // stops before covering the distance
    return 2.0 * distance / (k.speed + std::sqrt(disc));
}

/// Constant speed for reaction_time, then maximum braking.  Returns the first
/// time the cumulative travel equals `distance`, or nullopt if the vehicle
/// halts first.  The boundary d == stopping_distance counts as stopped.
inline std::optional<double> reaction_delayed_reach_time(const VehicleKinematics& k,
                                                         double distance) {
    if (distance < 0.0) throw std::invalid_argument("reaction_delayed_reach_time: distance < 0");
    if (distance == 0.0) return 0.0;
    if (distance >= stopping_distance(k)) return std::nullopt;
    const double reaction_travel = k.speed * k.reaction_time;
    if (distance <= reaction_travel) return distance / k.speed;
    const double rest = distance - reaction_travel;
    const double disc = k.speed * k.speed - 2.0 * k.a_dec * rest;
    // disc > 0 here: distance < stopping_distance guarantees it.
    return k.reaction_time + 2.0 * rest / (k.speed + std::sqrt(disc));
}

}  // namespace avrisk

#endif
