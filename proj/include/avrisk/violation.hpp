#ifndef AVRISK_VIOLATION_HPP
#define AVRISK_VIOLATION_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "avrisk/arrivals.hpp"
#include "avrisk/distribution.hpp"

// Red-light violation analysis: violation probability from monitored
// statistics, the violator's crossing-time model, and the conflict
// conditions for (a) free-flow arrival and (b) queued start of the ego
// vehicle.

namespace avrisk {

struct ViolationStats {
    double expected_violations = 0.0;  // nu_A(t), per monitoring interval
    double interval_length = 900.0;    // s, Delta T
    double cycle_length = 150.0;       // s, T_c

    void validate() const {
        if (!(expected_violations >= 0.0))
            throw std::invalid_argument("ViolationStats: expected_violations < 0");
        if (!(interval_length > 0.0 && cycle_length > 0.0))
            throw std::invalid_argument("ViolationStats: lengths must be > 0");
        if (cycle_length > interval_length)
            throw std::invalid_argument("ViolationStats: cycle_length > interval_length");
    }
};

struct ViolationGeometry {
    double d_y = 17.0;   // m, violator exposure length incl. vehicle
    double d_cz = 16.0;  // m, ego stop bar to conflict zone
    double d_x = 16.0;   // m, conflict-zone width incl. ego vehicle
    double t_rc = 3.0;   // s, red clear time

    void validate() const {
        if (!(d_y > 0.0 && d_cz > 0.0 && d_x > 0.0 && t_rc > 0.0))
            throw std::invalid_argument("ViolationGeometry: all fields must be > 0");
    }
};

enum class ConflictCase { A, B };  // A: free-flow arrival, B: queued start

/// Per-green-to-red-switch violation probability: T_c * nu / Delta T.
inline double violation_probability(const ViolationStats& stats) {
    stats.validate();
    const double p = stats.cycle_length * stats.expected_violations / stats.interval_length;
    if (p > 1.0) throw std::domain_error("violation_probability: T_c*nu/DeltaT > 1");
    return p;
}

/// Total violator exposure end time from the phase switch: t_d + d_y / v_V.
inline double crossing_time(const ViolationGeometry& g, double v_violator, double t_d) {
    g.validate();
    if (!(v_violator > 0.0)) throw std::invalid_argument("crossing_time: v_V <= 0");
    if (t_d < g.t_rc) throw std::invalid_argument("crossing_time: t_d < red clear time");
    return t_d + g.d_y / v_violator;
}

/// Half-open interval (lo, hi] of ego speeds or accelerations.
struct ConflictInterval {
    double lo;  // open
    double hi;  // closed; may be +inf when t_d == t_rc
};

/// Ego speeds producing simultaneous conflict-zone occupancy (case a):
///   d_CZ / (t*_d + d_y/v_V) < v_E <= (d_CZ + d_x) / t*_d.
/// nullopt when the interval is empty (no conflict possible).
inline std::optional<ConflictInterval> conflict_speed_interval_case_a(const ViolationGeometry& g,
                                                                     double v_violator,
                                                                     double t_d) {
    g.validate();
    if (!(v_violator > 0.0)) throw std::invalid_argument("case_a: v_V <= 0");
    const double t_star = t_d - g.t_rc;
    if (t_star < 0.0) throw std::invalid_argument("case_a: t*_d < 0");
    const double lo = g.d_cz / (t_star + g.d_y / v_violator);
    const double hi = t_star > 0.0 ? (g.d_cz + g.d_x) / t_star
                                   : std::numeric_limits<double>::infinity();
    if (lo >= hi) return std::nullopt;
    return ConflictInterval{lo, hi};
}

/// Case (b): constant acceleration from rest,
///   2 d_CZ / (t*_d + d_y/v_V)^2 < a_E <= 2 (d_CZ + d_x) / t*_d^2.
inline std::optional<ConflictInterval> conflict_accel_interval_case_b(const ViolationGeometry& g,
                                                                     double v_violator,
                                                                     double t_d) {
    g.validate();
    if (!(v_violator > 0.0)) throw std::invalid_argument("case_b: v_V <= 0");
    const double t_star = t_d - g.t_rc;
    if (t_star < 0.0) throw std::invalid_argument("case_b: t*_d < 0");
    const double reach = t_star + g.d_y / v_violator;
    const double lo = 2.0 * g.d_cz / (reach * reach);
    const double hi = t_star > 0.0 ? 2.0 * (g.d_cz + g.d_x) / (t_star * t_star)
                                   : std::numeric_limits<double>::infinity();
    if (lo >= hi) return std::nullopt;
    return ConflictInterval{lo, hi};
}

/// Violation probability times the conflict-interval mass under the supplied
/// speed (case a) or acceleration (case b) distribution.
inline double conflict_probability(const ViolationGeometry& g, const ViolationStats& stats,
                                   double v_violator, double t_d,
                                   const EmpiricalDistribution& dist, ConflictCase which) {
    validate(dist);
    const double p_v = violation_probability(stats);
    const auto interval = which == ConflictCase::A
                              ? conflict_speed_interval_case_a(g, v_violator, t_d)
                              : conflict_accel_interval_case_b(g, v_violator, t_d);
    if (!interval) return 0.0;
    return p_v * interval_mass(dist, interval->lo, interval->hi);
}

inline double collision_probability(double p_conf, const ConflictCollisionLink& link) {
    link.validate();
    return conflict_to_collision(p_conf, link);
}

struct ViolationSweepPoint {
    ConflictCase which;
    double t_d;                  // s
    double conflict_probability;
};

/// Conflict probability over a t_d grid for one case.
inline std::vector<ViolationSweepPoint> conflict_probability_sweep(
    const ViolationGeometry& g, const ViolationStats& stats, double v_violator,
    const EmpiricalDistribution& dist, ConflictCase which, double t_d_lo = 3.0,
    double t_d_hi = 15.0, double t_d_step = 0.25) {
    if (!(t_d_step > 0.0) || t_d_hi < t_d_lo)
        throw std::invalid_argument("conflict_probability_sweep: bad grid");
    std::vector<ViolationSweepPoint> out;
    const auto n = static_cast<long>(std::floor((t_d_hi - t_d_lo) / t_d_step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double t = t_d_lo + static_cast<double>(i) * t_d_step;
        out.push_back({which, t, conflict_probability(g, stats, v_violator, t, dist, which)});
    }
    return out;
}

}  // namespace avrisk

#endif
