#ifndef AVRISK_LEFT_TURN_HPP
#define AVRISK_LEFT_TURN_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "avrisk/arrivals.hpp"
#include "avrisk/kinematics.hpp"

// Occluded unprotected left turn: guaranteed-safety condition, the
// conflict-window / waiting-time pipeline, and the evasive-maneuver
// geometry along the turning arc.

namespace avrisk {

struct LeftTurnScenario {
    VehicleKinematics tmv{.speed = 11.176, .reaction_time = 0.7};  // opposing through vehicle
    VehicleKinematics av{.speed = 4.5, .reaction_time = 0.7};      // left turner at turn speed
    double d_cz_occluded = 12.0;  // m, TMV distance to conflict zone at first mutual visibility
    double lane_width = 4.0;      // m
    double turn_radius = 9.0;     // m, quarter-circle turning arc
    // Arc angle at which the AV's front enters the through lane's conflict
    // zone.  Default: along-lane travel R*sin(theta) reaches d_cz_occluded
    // minus one lane width, i.e. theta_conf = asin((d_cz - l_w) / R).
    double theta_conf = std::asin(8.0 / 9.0);

    void validate() const {
        tmv.validate();
        av.validate();
        if (!(d_cz_occluded > 0.0)) throw std::invalid_argument("LeftTurnScenario: d_cz_occluded <= 0");
        if (!(turn_radius > lane_width))
            throw std::invalid_argument("LeftTurnScenario: turn_radius must exceed lane_width");
        if (!(theta_conf > 0.0 && theta_conf <= std::asin(1.0) + 1e-12))
            throw std::invalid_argument("LeftTurnScenario: theta_conf outside (0, pi/2]");
    }
};

/// Largest TMV speed for which v^2 <= 2 a_dec (d_CZ - v rho) holds, i.e. the
/// positive root of v^2 + 2 a rho v - 2 a d = 0.
inline double guaranteed_safe_tmv_speed(const LeftTurnScenario& s) {
    const double a = s.tmv.a_dec;
    const double rho = s.tmv.reaction_time;
    const double d = s.d_cz_occluded;
    return -a * rho + std::sqrt(a * rho * a * rho + 2.0 * a * d);
}

struct SafeSpeedGridPoint {
    double rho;    // s
    double a_dec;  // m/s^2
    double v_max;  // m/s, guaranteed-safe boundary speed
};

/// Safe/unsafe boundary speed over a (reaction time, deceleration) grid.
inline std::vector<SafeSpeedGridPoint> sensitivity_sweep_fig2(const LeftTurnScenario& s,
                                                              const std::vector<double>& rho_range,
                                                              const std::vector<double>& a_dec_set) {
    if (rho_range.empty() || a_dec_set.empty())
        throw std::invalid_argument("sensitivity_sweep_fig2: empty range");
    std::vector<SafeSpeedGridPoint> grid;
    grid.reserve(rho_range.size() * a_dec_set.size());
    for (double a : a_dec_set) {
        for (double rho : rho_range) {
            LeftTurnScenario p = s;
            p.tmv.reaction_time = rho;
            p.tmv.a_dec = a;
            grid.push_back({rho, a, guaranteed_safe_tmv_speed(p)});
        }
    }
    return grid;
}

struct WaitingTimeResult {
    double d_min_cz;    // m
    double t_conf;      // s
    double lambda_max;  // 1/s
    double t_obs;       // s
};

/// Chains stopping distance -> conflict window -> lambda_max -> t_obs.
/// nullopt means no conflict window exists (the turn is guaranteed safe,
/// t_obs = 0).
inline std::optional<WaitingTimeResult> waiting_time_pipeline(const LeftTurnScenario& s,
                                                              const RiskBudget& budget,
                                                              const ConflictCollisionLink& link) {
    s.validate();
    budget.validate();
    link.validate();
    const double d_min = stopping_distance(s.tmv);
    if (d_min <= s.d_cz_occluded) return std::nullopt;
    const double t_conf = (d_min - s.d_cz_occluded) / s.tmv.speed;
    const double p_conf = budget.p_coll_max * link.gamma;
    if (!(p_conf > 0.0 && p_conf < 1.0))
        throw std::domain_error("waiting_time_pipeline: implied p_conf outside (0,1)");
    const double lam = lambda_max(p_conf, t_conf);
    return WaitingTimeResult{d_min, t_conf, lam, required_observation_time(lam, budget.alpha)};
}

/// TMV distance from the conflict zone at the instant of mutual visibility,
/// as a function of the AV's arc position theta:
///   d_CZ(theta) = l_w (d0 - R sin th) / (R cos th - (R - l_w)).
/// nullopt when the denominator is <= 0 (sight line divergent: unlimited
/// visibility, hence safe).
inline std::optional<double> occluded_view_distance(double theta, const LeftTurnScenario& s) {
    if (theta < 0.0) throw std::invalid_argument("occluded_view_distance: theta < 0");
    const double den = s.turn_radius * std::cos(theta) - (s.turn_radius - s.lane_width);
    if (den <= 0.0) return std::nullopt;
    return s.lane_width * (s.d_cz_occluded - s.turn_radius * std::sin(theta)) / den;
}

/// Arc angle beyond which the reaction-delayed TMV stops before the conflict
/// zone (d_CZ(theta) >= stopping distance).  Found by bisection; d_CZ is
/// strictly increasing on the valid range.
inline double theta_max(const LeftTurnScenario& s) {
    const double d_min = stopping_distance(s.tmv);
    double lo = 0.0;
    double hi = std::acos((s.turn_radius - s.lane_width) / s.turn_radius);
    if (auto d0 = occluded_view_distance(0.0, s); d0 && *d0 >= d_min) return 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto d = occluded_view_distance(mid, s);
        if (!d || *d >= d_min)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace detail {

/// Can the turning AV, first seeing the TMV at arc angle theta, clear the
/// conflict zone (arc remainder + lane width + own length) before the
/// braking TMV reaches it?
inline bool accel_escape_possible(double theta, const LeftTurnScenario& s) {
    const auto d = occluded_view_distance(theta, s);
    if (!d) return true;  // unlimited visibility
    const auto t_tmv = reaction_delayed_reach_time(s.tmv, *d);
    if (!t_tmv) return true;  // TMV stops before the conflict zone
    const double avail = *t_tmv - s.av.reaction_time;
    if (avail <= 0.0) return false;
    const double v_l = s.av.speed;
    const double need = s.turn_radius * (s.theta_conf - theta) + s.lane_width + s.av.length -
                        v_l * s.av.reaction_time;
    const double cover = v_l * avail + 0.5 * s.av.a_acc * avail * avail;
    return cover >= need;
}

}  // namespace detail

struct EvasiveThetaResult {
    double decel_safe_max;      // rad; theta <= this allows stopping short of the zone
    double accel_safe_min;      // rad; theta >= this allows clearing ahead of the TMV
    double unsafe_lo;           // rad
    double unsafe_hi;           // rad
    double waiting_time_factor; // theta_max / (accel_safe_min - decel_safe_max)
};

/// Evasive-maneuver window along the arc.  nullopt means there is no theta at
/// which both escapes fail (evasion is always possible).
///
/// Note on reaction times: the published unsafe interval is reproduced with
/// the AV using the same optimistic 0.7 s reaction as the TMV; av.reaction_time
/// is a free parameter here and the pipeline elsewhere defaults it to 0.7 for
/// this scenario.
inline std::optional<EvasiveThetaResult> evasive_theta_interval(const LeftTurnScenario& s) {
    s.validate();
    const double v_l = s.av.speed;
    const double decel_max = s.theta_conf - v_l * v_l / (2.0 * s.av.a_dec * s.turn_radius) -
                             v_l * s.av.reaction_time / s.turn_radius;
    // accel_escape_possible is monotone in theta (farther along the arc:
    // less to cover, more TMV braking time); bisect for the boundary.
    double lo = 0.0, hi = s.theta_conf;
    if (detail::accel_escape_possible(lo, s)) return std::nullopt;  // escape possible everywhere
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (detail::accel_escape_possible(mid, s))
            hi = mid;
        else
            lo = mid;
    }
    const double accel_min = 0.5 * (lo + hi);
    if (accel_min <= decel_max) return std::nullopt;
    const double th_max = theta_max(s);
    return EvasiveThetaResult{decel_max, accel_min, std::max(decel_max, 0.0), accel_min,
                              th_max / (accel_min - decel_max)};
}

}  // namespace avrisk

#endif
