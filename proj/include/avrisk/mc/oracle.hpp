#ifndef AVRISK_MC_ORACLE_HPP
#define AVRISK_MC_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "avrisk/distribution.hpp"
#include "avrisk/left_turn.hpp"
#include "avrisk/mc/rng.hpp"
#include "avrisk/merging.hpp"
#include "avrisk/pedestrian.hpp"
#include "avrisk/violation.hpp"

// Monte Carlo kinematic oracle.  Every scenario's closed-form probability and
// safe-gap boundary is re-derived here from sampled arrivals and integrated
// trajectories, never from the closed forms themselves.

namespace avrisk::mc {

struct SimConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 42;
    double time_step = 0.01;  // s

    void validate() const {
        if (trials < 1) throw std::invalid_argument("SimConfig: trials < 1");
        if (!(time_step > 0.0)) throw std::invalid_argument("SimConfig: time_step <= 0");
    }
};

struct SimEstimate {
    double point;
    double std_error;  // sqrt(p (1-p) / trials)
    std::uint64_t trials;
};

inline SimEstimate make_estimate(std::uint64_t successes, std::uint64_t trials) {
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

namespace detail {

/// Time for a vehicle to cover `distance`, holding speed for `reaction` then
/// applying constant `accel` (signed), stepped at dt with exact sub-stepping
/// at the reaction boundary, the in-step crossing, and the stop.  Returns a
/// negative value if the vehicle stops short.
inline double stepped_reach_time(double speed, double reaction, double accel, double distance,
                                 double dt) {
    if (distance <= 0.0) return 0.0;
    double t = 0.0, x = 0.0, v = speed;
    // Reaction phase: constant speed.
    while (t < reaction) {
        const double step = std::min(dt, reaction - t);
        if (x + v * step >= distance) return t + (distance - x) / v;
        x += v * step;
        t += step;
    }
    if (accel >= 0.0) {
        for (;;) {
            double step = dt;
            const double nx = x + v * step + 0.5 * accel * step * step;
            if (nx >= distance) {
                // Solve x + v s + a s^2/2 = distance within the step.
                const double rem = distance - x;
                const double s = accel > 0.0
                                     ? 2.0 * rem / (v + std::sqrt(v * v + 2.0 * accel * rem))
                                     : rem / v;
                return t + s;
            }
            x = nx;
            v += accel * step;
            t += step;
        }
    }
    const double brake = -accel;
    for (;;) {
        if (v <= 0.0) return -1.0;
        const double t_stop = v / brake;
        const double step = std::min(dt, t_stop);
        const double nx = x + v * step - 0.5 * brake * step * step;
        if (nx >= distance) {
            const double rem = distance - x;
            const double disc = v * v - 2.0 * brake * rem;
            if (disc < 0.0) return -1.0;
            return t + 2.0 * rem / (v + std::sqrt(disc));
        }
        x = nx;
        v -= brake * step;
        t += step;
        if (v <= 0.0) return -1.0;  // stopped short
    }
}

}  // namespace detail

/// Samples Poisson TMV traffic upstream of the visibility horizon at the
/// moment the AV commits to the turn, and integrates each TMV's
/// reaction-delayed braking trajectory; a conflict is any TMV that still
/// reaches the conflict zone.
inline SimEstimate simulate_left_turn_conflict(const LeftTurnScenario& s, double rate,
                                               const SimConfig& cfg) {
    s.validate();
    cfg.validate();
    if (rate < 0.0) throw std::invalid_argument("simulate_left_turn_conflict: rate < 0");
    const double v = s.tmv.speed;
    std::uint64_t conflicts = 0;
    if (rate > 0.0 && v > 0.0) {
        // Poisson arrivals in time = Poisson positions in space at density rate/v.
        const double per_meter = rate / v;
        // TMVs beyond the no-reaction-needed range cannot conflict; keep a margin.
        const double horizon = stopping_distance(s.tmv) + 5.0;
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
            TrialRng rng(cfg.seed, trial);
            bool conflict = false;
            for (double d = s.d_cz_occluded + rng.exponential(per_meter); d < horizon;
                 d += rng.exponential(per_meter)) {
                const double reach = detail::stepped_reach_time(v, s.tmv.reaction_time,
                                                                -s.tmv.a_dec, d, cfg.time_step);
                if (reach >= 0.0) {
                    conflict = true;
                    break;
                }
            }
            conflicts += conflict ? 1 : 0;
        }
    }
    return make_estimate(conflicts, cfg.trials);
}

/// Poisson pedestrians walk through the zone center at v_ped; the AV tries
/// the accelerate branch and the brake branch.  A trial is a conflict only
/// when both branches hit someone.
inline SimEstimate simulate_pedestrian_conflict(const PedestrianScenario& s,
                                                const SimConfig& cfg) {
    s.validate();
    cfg.validate();
    const double delta = s.av.width / s.ped_speed;
    const double t_entry_acc =
        detail::stepped_reach_time(s.av.speed, 0.0, s.av.a_acc, s.d_veh_to_crash, cfg.time_step);
    const double t_entry_dec =
        detail::stepped_reach_time(s.av.speed, 0.0, -s.av.a_dec, s.d_veh_to_crash, cfg.time_step);
    const bool brake_stops_short = t_entry_dec < 0.0;
    std::uint64_t conflicts = 0;
    if (s.ped_rate > 0.0 && !brake_stops_short) {
        // Arrival times of pedestrians at the zone center.  Peds already just
        // past the center at detection (negative arrival time) still matter,
        // so the sampled span starts at -delta.
        const double t_lo = -delta;
        const double t_hi = std::max(t_entry_acc, t_entry_dec) + delta + 1.0;
        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
            TrialRng rng(cfg.seed, trial);
            bool accel_hits = false, brake_hits = false;
            for (double ta = t_lo + rng.exponential(s.ped_rate); ta < t_hi;
                 ta += rng.exponential(s.ped_rate)) {
                // Ped center-line offset when the AV front reaches the zone;
                // the AV body spans +-w/2 around the ped's crossing line.
                if (std::abs((t_entry_acc - ta) * s.ped_speed) <= s.av.width / 2.0)
                    accel_hits = true;
                if (std::abs((t_entry_dec - ta) * s.ped_speed) <= s.av.width / 2.0)
                    brake_hits = true;
                if (accel_hits && brake_hits) break;
            }
            conflicts += (accel_hits && brake_hits) ? 1 : 0;
        }
    }
    return make_estimate(conflicts, cfg.trials);
}

/// Samples the ego speed (case a) or start-up acceleration (case b) and
/// derives both vehicles' conflict-zone occupancy intervals from their
/// trajectories; counts co-occupancy.  Returns the conditional probability,
/// i.e. before the violation-probability factor.
inline SimEstimate simulate_violation_conflict(const ViolationGeometry& g, double v_violator,
                                               double t_d, const EmpiricalDistribution& dist,
                                               ConflictCase which, const SimConfig& cfg) {
    g.validate();
    cfg.validate();
    avrisk::validate(dist);
    if (!(v_violator > 0.0)) throw std::invalid_argument("simulate_violation_conflict: v_V <= 0");
    if (t_d < g.t_rc) throw std::invalid_argument("simulate_violation_conflict: t_d < t_rc");

    // Histogram sampling tables (unused for Normal).
    const Histogram* hist = std::get_if<Histogram>(&dist);
    const Normal* norm = std::get_if<Normal>(&dist);
    std::vector<double> cum;
    if (hist) {
        cum.reserve(hist->counts.size());
        double run = 0.0;
        for (double c : hist->counts) cum.push_back(run += c);
    }

    const double viol_enter = t_d;
    const double viol_exit = t_d + g.d_y / v_violator;
    std::uint64_t conflicts = 0;
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        TrialRng rng(cfg.seed, trial);
        double ego_enter, ego_exit;
        if (which == ConflictCase::A) {
            double v_e;
            if (hist) {
                const double u = rng.uniform() * cum.back();
                const auto it = std::upper_bound(cum.begin(), cum.end(), u);
                const auto i = static_cast<std::size_t>(it - cum.begin());
                const std::size_t bin = std::min(i, hist->counts.size() - 1);
                v_e = hist->edges[bin] + rng.uniform() * (hist->edges[bin + 1] - hist->edges[bin]);
            } else {
                v_e = norm->mean + std::sqrt(norm->variance) * rng.normal(0.0, 1.0);
            }
            if (!(v_e > 0.0)) continue;  // not moving: never enters
            ego_enter = g.t_rc + g.d_cz / v_e;
            ego_exit = g.t_rc + (g.d_cz + g.d_x) / v_e;
        } else {
            double a_e;
            if (norm)
                a_e = norm->mean + std::sqrt(norm->variance) * rng.normal(0.0, 1.0);
            else {
                const double u = rng.uniform() * cum.back();
                const auto it = std::upper_bound(cum.begin(), cum.end(), u);
                const auto i = static_cast<std::size_t>(it - cum.begin());
                const std::size_t bin = std::min(i, hist->counts.size() - 1);
                a_e = hist->edges[bin] + rng.uniform() * (hist->edges[bin + 1] - hist->edges[bin]);
            }
            if (!(a_e > 0.0)) continue;
            ego_enter = g.t_rc + std::sqrt(2.0 * g.d_cz / a_e);
            ego_exit = g.t_rc + std::sqrt(2.0 * (g.d_cz + g.d_x) / a_e);
        }
        if (ego_enter < viol_exit && ego_exit >= viol_enter) ++conflicts;
    }
    return make_estimate(conflicts, cfg.trials);
}

struct MergeSimResult {
    bool collision;
    double min_separation;  // m, over both vehicle pairs and all time
};

namespace detail {

// Closed-form piecewise-quadratic positions for the merge event vehicles.

inline double pos_brake_now(double t, double v, double a_dec) {
    const double tb = std::min(t, v / a_dec);
    return v * tb - 0.5 * a_dec * tb * tb;
}

inline double pos_react_then_brake(double t, double v, double rho, double a_dec) {
    if (t <= rho) return v * t;
    return v * rho + pos_brake_now(t - rho, v, a_dec);
}

inline double pos_accel_then_brake(double t, double v, double rho, double a_acc, double a_dec) {
    if (t <= rho) return v * t + 0.5 * a_acc * t * t;
    const double v1 = v + a_acc * rho;
    return v * rho + 0.5 * a_acc * rho * rho + pos_brake_now(t - rho, v1, a_dec);
}

}  // namespace detail

/// Deterministic integration of the merge triggering event(s): lead brakes to
/// a stop (the AV reacting after rho_AV), and in WorstCase the lag vehicle
/// accelerates through its reaction window before braking while the AV brakes
/// to a stop.  Gaps are sampled on a time_step grid plus every exact phase
/// boundary.
inline MergeSimResult simulate_merge(const MergeScenario& s, double d_f, double d_b,
                                     MergeMode mode, const SimConfig& cfg) {
    s.validate();
    cfg.validate();
    const double lag_peak_v =
        mode == MergeMode::WorstCase ? s.lag.speed + s.lag.reaction_time * s.lag.a_acc : s.lag.speed;
    const double t_lead_stop = s.lead.speed / s.lead.a_dec;
    const double t_av_react_stop = s.av.reaction_time + s.av.speed / s.av.a_dec;
    const double t_av_brake_stop = s.av.speed / s.av.a_dec;
    const double t_lag_stop = s.lag.reaction_time + lag_peak_v / s.lag.a_dec;
    const double t_end = std::max({t_lead_stop, t_av_react_stop, t_av_brake_stop, t_lag_stop});

    std::vector<double> times;
    for (double t = 0.0; t < t_end; t += cfg.time_step) times.push_back(t);
    times.insert(times.end(), {t_lead_stop, t_av_react_stop, t_av_brake_stop, t_lag_stop,
                               s.av.reaction_time, s.lag.reaction_time, t_end});
    std::sort(times.begin(), times.end());

    double min_sep = std::min(d_f, d_b);
    for (double t : times) {
        if (t < 0.0 || t > t_end) continue;
        // Pair 1: lead (braking now) ahead of the AV (reacting, then braking).
        const double gap_lead = d_f + detail::pos_brake_now(t, s.lead.speed, s.lead.a_dec) -
                                detail::pos_react_then_brake(t, s.av.speed, s.av.reaction_time,
                                                             s.av.a_dec);
        // Pair 2: AV (braking now, per the envelope's worst case) ahead of lag.
        const double lag_travel =
            mode == MergeMode::WorstCase
                ? detail::pos_accel_then_brake(t, s.lag.speed, s.lag.reaction_time, s.lag.a_acc,
                                               s.lag.a_dec)
                : detail::pos_react_then_brake(t, s.lag.speed, s.lag.reaction_time, s.lag.a_dec);
        const double gap_lag =
            d_b + detail::pos_brake_now(t, s.av.speed, s.av.a_dec) - lag_travel;
        min_sep = std::min({min_sep, gap_lead, gap_lag});
    }
    return {min_sep < -1e-9, min_sep};
}

}  // namespace avrisk::mc

#endif
