#ifndef AVRISK_PEDESTRIAN_HPP
#define AVRISK_PEDESTRIAN_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "avrisk/arrivals.hpp"
#include "avrisk/kinematics.hpp"

// Occluded-pedestrian pre-crash scenarios: the accelerate-vs-brake conflict
// window and the resulting Poisson conflict/collision probabilities.
// Distances are measured from the AV front to the near edge of the pedestrian
// conflict zone, and from the pedestrian to the zone's center.

namespace avrisk {

enum class PedestrianKind { ManeuverType1, ManeuverType2, NoManeuver };

constexpr std::string_view to_string(PedestrianKind k) {
    switch (k) {
        case PedestrianKind::ManeuverType1: return "maneuver_type1";
        case PedestrianKind::ManeuverType2: return "maneuver_type2";
        case PedestrianKind::NoManeuver: return "no_maneuver";
    }
    return "?";
}

struct PedestrianScenario {
    PedestrianKind kind = PedestrianKind::ManeuverType2;
    VehicleKinematics av{.speed = 6.71};
    double d_veh_to_crash = 4.0;   // m, AV to pedestrian conflict zone at detection
    double ped_speed = 2.0;        // m/s
    double ped_rate = 1.0 / 60.0;  // 1/s

    static PedestrianScenario defaults(PedestrianKind kind) {
        PedestrianScenario s;
        s.kind = kind;
        switch (kind) {
            case PedestrianKind::ManeuverType1:
                s.av.speed = 6.71;
                s.d_veh_to_crash = 3.0;
                break;
            case PedestrianKind::ManeuverType2:
                s.av.speed = 6.71;
                s.d_veh_to_crash = 4.0;
                break;
            case PedestrianKind::NoManeuver:
                s.av.speed = 11.18;
                s.d_veh_to_crash = 4.0;
                break;
        }
        return s;
    }

    void validate() const {
        av.validate();
        if (d_veh_to_crash < 0.0) throw std::invalid_argument("PedestrianScenario: d_veh_to_crash < 0");
        if (!(ped_speed > 0.0)) throw std::invalid_argument("PedestrianScenario: ped_speed <= 0");
        if (ped_rate < 0.0) throw std::invalid_argument("PedestrianScenario: ped_rate < 0");
    }
};

struct PedConflictWindow {
    double t_acc;                 // s, zone-entry time when accelerating
    std::optional<double> t_dec;  // s, zone-entry time when braking; nullopt = stops short
    double delta;                 // s, time the pedestrian needs to cross the AV's width
    double window_length;         // s, max(t_acc - t_dec + delta, 0); 0 if braking avoids
};

/// Arrival window (of pedestrians at the zone center) for which neither
/// accelerating nor braking avoids the conflict.
inline PedConflictWindow conflict_window(const PedestrianScenario& s) {
    s.validate();
    const double delta = s.av.width / s.ped_speed;
    const double t_acc = time_to_reach_accelerating(s.av, s.d_veh_to_crash);
    const auto t_dec = time_to_reach_decelerating(s.av, s.d_veh_to_crash);
    // If braking stops the AV short of the zone, it always picks that action.
    const double window = t_dec ? std::max(t_acc - *t_dec + delta, 0.0) : 0.0;
    return {t_acc, t_dec, delta, window};
}

/// Band of pedestrian distances to the zone center (at detection time) for
/// which conflict is unavoidable: [(t_dec - delta/2) v_ped, (t_acc + delta/2) v_ped],
/// lower bound clamped at 0.
inline std::pair<double, double> unavoidable_ped_distance_band(const PedestrianScenario& s) {
    const auto w = conflict_window(s);
    if (!(w.window_length > 0.0))
        throw std::domain_error("unavoidable_ped_distance_band: no unavoidable window");
    const double lo = std::max((*w.t_dec - w.delta / 2.0) * s.ped_speed, 0.0);
    const double hi = (w.t_acc + w.delta / 2.0) * s.ped_speed;
    return {lo, hi};
}

/// 1 - exp(-lambda_ped * (t_acc - t_dec + delta)).
inline double conflict_probability(const PedestrianScenario& s) {
    const auto w = conflict_window(s);
    return prob_at_least_one_arrival(ArrivalModel{s.ped_rate}, w.window_length);
}

inline double collision_probability(const PedestrianScenario& s, const ConflictCollisionLink& link) {
    link.validate();
    return conflict_to_collision(conflict_probability(s), link);
}

struct PedSweepPoint {
    PedestrianKind kind;
    double v_av;         // m/s
    double probability;  // conflict probability
};

/// Conflict probability as a function of AV speed for one scenario kind.
inline std::vector<PedSweepPoint> conflict_speed_sweep_fig6(const PedestrianScenario& s,
                                                            const std::vector<double>& v_av_range) {
    std::vector<PedSweepPoint> series;
    series.reserve(v_av_range.size());
    for (double v : v_av_range) {
        PedestrianScenario p = s;
        p.av.speed = v;
        series.push_back({s.kind, v, conflict_probability(p)});
    }
    return series;
}

}  // namespace avrisk

#endif
