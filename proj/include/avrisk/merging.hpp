#ifndef AVRISK_MERGING_HPP
#define AVRISK_MERGING_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "avrisk/kinematics.hpp"
#include "avrisk/units.hpp"

// Freeway merging: worst-case and single-event safe-gap envelopes and
// classification of observed gaps against them.

namespace avrisk {

enum class MergeMode { WorstCase, SingleEvent };

struct MergeScenario {
    VehicleKinematics av{.speed = 0.0, .reaction_time = 0.83};   // merging vehicle
    VehicleKinematics lead{.speed = 0.0, .reaction_time = 0.7};  // vehicle ahead in target lane
    VehicleKinematics lag{.speed = 0.0, .reaction_time = 2.5};   // vehicle behind in target lane

    /// All speeds set to the lane speed; used when per-vehicle estimates are
    /// unavailable in ingested data.
    static MergeScenario at_lane_speed(double lane_speed_mps) {
        MergeScenario s;
        s.av.speed = s.lead.speed = s.lag.speed = lane_speed_mps;
        return s;
    }

    void validate() const {
        av.validate();
        lead.validate();
        lag.validate();
    }
};

/// Gap ahead needed to survive the lead vehicle braking to a stop:
/// max{v_AV rho_AV + (v_AV^2 - v_F^2) / (2 a_dec), 0}.
inline double lead_safe_gap(const MergeScenario& s) {
    s.validate();
    const double g = s.av.speed * s.av.reaction_time +
                     (s.av.speed * s.av.speed - s.lead.speed * s.lead.speed) / (2.0 * s.av.a_dec);
    return std::max(g, 0.0);
}

/// Gap behind needed when the lag vehicle accelerates for rho_B and then
/// brakes while the AV brakes to a stop:
/// max{v_B rho_B + a_acc rho_B^2 / 2 + ((v_B + rho_B a_acc)^2 - v_AV^2) / (2 a_dec), 0}.
inline double lag_safe_gap_worst_case(const MergeScenario& s) {
    s.validate();
    const double rho = s.lag.reaction_time;
    const double v_peak = s.lag.speed + rho * s.lag.a_acc;
    const double g = s.lag.speed * rho + 0.5 * s.lag.a_acc * rho * rho +
                     (v_peak * v_peak - s.av.speed * s.av.speed) / (2.0 * s.lag.a_dec);
    return std::max(g, 0.0);
}

/// Lag gap when the lag vehicle only coasts through its reaction time:
/// max{v_B rho_B + (v_B^2 - v_AV^2) / (2 a_dec), 0}.
inline double lag_safe_gap_single_event(const MergeScenario& s) {
    s.validate();
    const double g = s.lag.speed * s.lag.reaction_time +
                     (s.lag.speed * s.lag.speed - s.av.speed * s.av.speed) / (2.0 * s.lag.a_dec);
    return std::max(g, 0.0);
}

/// d_safe = d_F,safe + d_B,safe + l_AV.
inline double safe_merging_gap(const MergeScenario& s, MergeMode mode) {
    const double lag_gap =
        mode == MergeMode::WorstCase ? lag_safe_gap_worst_case(s) : lag_safe_gap_single_event(s);
    return lead_safe_gap(s) + lag_gap + s.av.length;
}

struct ObservedGapRecord {
    std::string interval_label;
    double lane_speed = 0.0;    // m/s
    double observed_gap = 0.0;  // m
    std::optional<double> v_av;  // m/s, per-vehicle estimates when available
    std::optional<double> v_f;
    std::optional<double> v_b;
};

struct GapFeasibilityRow {
    std::string interval_label;
    double lane_speed;       // m/s
    double observed_gap;     // m
    double safe_gap_worst;   // m
    double safe_gap_single;  // m
    bool feasible_worst;     // observed >= safe (closed boundary)
    bool feasible_single;
};

/// Applies the scenario template to each record (equal-to-lane-speed unless
/// per-vehicle estimates are present) and classifies the observed gap.
inline std::vector<GapFeasibilityRow> gap_feasibility_report(
    const std::vector<ObservedGapRecord>& records, const MergeScenario& tmpl = MergeScenario{}) {
    std::vector<GapFeasibilityRow> rows;
    rows.reserve(records.size());
    for (const auto& r : records) {
        if (!(r.observed_gap > 0.0))
            throw std::invalid_argument("gap_feasibility_report: observed_gap <= 0");
        MergeScenario s = tmpl;
        s.av.speed = r.v_av.value_or(r.lane_speed);
        s.lead.speed = r.v_f.value_or(r.lane_speed);
        s.lag.speed = r.v_b.value_or(r.lane_speed);
        const double wc = safe_merging_gap(s, MergeMode::WorstCase);
        const double se = safe_merging_gap(s, MergeMode::SingleEvent);
        rows.push_back({r.interval_label, r.lane_speed, r.observed_gap, wc, se,
                        r.observed_gap >= wc, r.observed_gap >= se});
    }
    return rows;
}

struct MergeSweepPoint {
    double lane_speed;  // m/s
    double a_dec;       // m/s^2
    double safe_gap;    // m
};

/// Safe-gap boundary over lane speed for each deceleration rate.
inline std::vector<MergeSweepPoint> safe_gap_sweep_fig12(const std::vector<double>& lane_speeds,
                                                         const std::vector<double>& a_dec_set,
                                                         MergeMode mode = MergeMode::WorstCase) {
    if (lane_speeds.empty() || a_dec_set.empty())
        throw std::invalid_argument("safe_gap_sweep_fig12: empty range");
    std::vector<MergeSweepPoint> out;
    out.reserve(lane_speeds.size() * a_dec_set.size());
    for (double a : a_dec_set) {
        for (double v : lane_speeds) {
            MergeScenario s = MergeScenario::at_lane_speed(v);
            s.av.a_dec = s.lead.a_dec = s.lag.a_dec = a;
            out.push_back({v, a, safe_merging_gap(s, mode)});
        }
    }
    return out;
}

}  // namespace avrisk

#endif
