// Command-line surface for the scenario risk library: per-scenario reports,
// figure/table sweeps, and Monte Carlo validation runs.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avrisk/arrivals.hpp"
#include "avrisk/io/ingest.hpp"
#include "avrisk/left_turn.hpp"
#include "avrisk/mc/oracle.hpp"
#include "avrisk/merging.hpp"
#include "avrisk/pedestrian.hpp"
#include "avrisk/units.hpp"
#include "avrisk/violation.hpp"

namespace {

constexpr const char* kVersion = "avrisk 0.1.0";

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- utilities

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// Speeds accept unit suffixes: `25mph`, `11.18mps`; unsuffixed values are SI.
double parse_speed(const std::string& text) {
    std::string body = text;
    double factor = 1.0;
    if (text.size() > 3 && text.substr(text.size() - 3) == "mph") {
        body = text.substr(0, text.size() - 3);
        factor = avrisk::kMphToMps;
    } else if (text.size() > 3 && text.substr(text.size() - 3) == "mps") {
        body = text.substr(0, text.size() - 3);
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != body.size())
        throw CLI::ValidationError("speed", "expected a number with optional mph/mps suffix, got '" +
                                                text + "'");
    return v * factor;
}

std::string data_dir() {
    if (const char* env = std::getenv("AVRISK_DATA_DIR")) return env;
    return "data";
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_csv(const Table& t, std::ostream& out) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        out << t.header[i] << (i + 1 < t.header.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
}

json table_to_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj;
        for (std::size_t i = 0; i < t.header.size() && i < row.size(); ++i)
            obj[t.header[i]] = row[i];
        rows.push_back(obj);
    }
    return rows;
}

void write_table(const Table& t, const std::string& path, const std::string& format) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write output file: " + path);
    if (format == "json")
        out << table_to_json(t).dump(2) << "\n";
    else
        write_csv(t, out);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string checksum_hex(const std::string& bytes) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ------------------------------------------------------------- scenario cmds

struct KeyValueReport {
    Table table{{"key", "value"}, {}};

    void add(const std::string& key, const std::string& value) {
        table.add({key, value});
        std::cout << key << " = " << value << "\n";
    }
    void add(const std::string& key, double value) { add(key, num(value)); }
};

void maybe_write(const Table& t, const std::string& out, const std::string& format) {
    if (!out.empty()) write_table(t, out, format);
}

int run_left_turn(double v_th, double rho, double a_dec, double d_cz, double gamma, double p_coll,
                  double alpha, double av_speed, double av_rho, const std::string& out,
                  const std::string& format) {
    avrisk::LeftTurnScenario s;
    s.tmv.speed = v_th;
    s.tmv.reaction_time = rho;
    s.tmv.a_dec = a_dec;
    s.d_cz_occluded = d_cz;
    s.av.speed = av_speed;
    s.av.reaction_time = av_rho;
    s.validate();

    KeyValueReport r;
    const double v_safe = avrisk::guaranteed_safe_tmv_speed(s);
    r.add("guaranteed_safe_tmv_speed_mps", v_safe);
    r.add("guaranteed_safe_tmv_speed_mph", avrisk::mps_to_mph(v_safe));

    const avrisk::RiskBudget budget{p_coll, alpha};
    const avrisk::ConflictCollisionLink link{gamma};
    if (const auto w = avrisk::waiting_time_pipeline(s, budget, link)) {
        r.add("d_min_cz_m", w->d_min_cz);
        r.add("t_conf_s", w->t_conf);
        r.add("lambda_max_per_s", w->lambda_max);
        r.add("t_obs_s", w->t_obs);
        if (const auto ev = avrisk::evasive_theta_interval(s)) {
            r.add("evasive_unsafe_theta_lo_rad", ev->unsafe_lo);
            r.add("evasive_unsafe_theta_hi_rad", ev->unsafe_hi);
            r.add("waiting_time_factor", ev->waiting_time_factor);
            r.add("t_obs_adjusted_s", w->t_obs / ev->waiting_time_factor);
        }
    } else {
        r.add("conflict_window", "none (guaranteed safe)");
        r.add("t_obs_s", 0.0);
    }
    maybe_write(r.table, out, format);
    return 0;
}

avrisk::PedestrianKind parse_kind(const std::string& kind) {
    if (kind == "type1") return avrisk::PedestrianKind::ManeuverType1;
    if (kind == "type2") return avrisk::PedestrianKind::ManeuverType2;
    if (kind == "none") return avrisk::PedestrianKind::NoManeuver;
    throw CLI::ValidationError("--kind", "expected type1, type2 or none");
}

int run_pedestrian(const std::string& kind, std::optional<double> v_av, std::optional<double> d,
                   double ped_rate, double ped_speed, double gamma, const std::string& out,
                   const std::string& format) {
    auto s = avrisk::PedestrianScenario::defaults(parse_kind(kind));
    if (v_av) s.av.speed = *v_av;
    if (d) s.d_veh_to_crash = *d;
    s.ped_rate = ped_rate;
    s.ped_speed = ped_speed;
    s.validate();

    KeyValueReport r;
    r.add("scenario", std::string(avrisk::to_string(s.kind)));
    const auto w = avrisk::conflict_window(s);
    r.add("t_zone_accelerating_s", w.t_acc);
    if (w.t_dec)
        r.add("t_zone_braking_s", *w.t_dec);
    else
        r.add("t_zone_braking_s", "stops short");
    r.add("conflict_window_s", w.window_length);
    if (w.window_length > 0.0) {
        const auto [lo, hi] = avrisk::unavoidable_ped_distance_band(s);
        r.add("unavoidable_band_lo_m", lo);
        r.add("unavoidable_band_hi_m", hi);
    }
    const double p = avrisk::conflict_probability(s);
    r.add("conflict_probability", p);
    r.add("collision_probability", avrisk::conflict_to_collision(p, {gamma}));
    maybe_write(r.table, out, format);
    return 0;
}

int run_violation(double nu, double cycle, double interval, double v_v, double t_d,
                  const std::string& which, const std::string& speed_hist_path, double accel_mean,
                  double accel_var, double gamma, const std::string& out,
                  const std::string& format) {
    const avrisk::ViolationStats stats{nu, interval, cycle};
    const avrisk::ViolationGeometry g;
    const avrisk::ConflictCase cs =
        which == "b" ? avrisk::ConflictCase::B : avrisk::ConflictCase::A;
    avrisk::EmpiricalDistribution dist = avrisk::Normal{accel_mean, accel_var};
    if (cs == avrisk::ConflictCase::A) {
        const auto d = avrisk::io::parse(speed_hist_path, avrisk::io::DatasetKind::SpeedHistogram);
        dist = avrisk::io::to_histogram(d);
    }

    KeyValueReport r;
    r.add("violation_probability", avrisk::violation_probability(stats));
    const auto iv = cs == avrisk::ConflictCase::A
                        ? avrisk::conflict_speed_interval_case_a(g, v_v, t_d)
                        : avrisk::conflict_accel_interval_case_b(g, v_v, t_d);
    if (iv) {
        r.add(cs == avrisk::ConflictCase::A ? "conflict_speed_lo_mps" : "conflict_accel_lo_mps2",
              iv->lo);
        r.add(cs == avrisk::ConflictCase::A ? "conflict_speed_hi_mps" : "conflict_accel_hi_mps2",
              iv->hi);
        r.add("interval_mass", avrisk::interval_mass(dist, iv->lo, iv->hi));
    } else {
        r.add("conflict_interval", "empty");
    }
    const double p = avrisk::conflict_probability(g, stats, v_v, t_d, dist, cs);
    r.add("conflict_probability", p);
    r.add("collision_probability", avrisk::conflict_to_collision(p, {gamma}));
    maybe_write(r.table, out, format);
    return 0;
}

Table feasibility_table(const std::vector<avrisk::GapFeasibilityRow>& rows) {
    Table t{{"interval_label", "lane_speed_mph", "observed_gap_m", "safe_gap_worst_m",
             "safe_gap_single_m", "feasible_worst", "feasible_single"},
            {}};
    for (const auto& r : rows)
        t.add({r.interval_label, num(avrisk::mps_to_mph(r.lane_speed)), num(r.observed_gap),
               num(r.safe_gap_worst), num(r.safe_gap_single), r.feasible_worst ? "1" : "0",
               r.feasible_single ? "1" : "0"});
    return t;
}

int run_merge(std::optional<double> lane_speed, const std::string& data_path,
              const std::string& out, const std::string& format) {
    if (lane_speed) {
        const auto s = avrisk::MergeScenario::at_lane_speed(*lane_speed);
        KeyValueReport r;
        r.add("lane_speed_mps", *lane_speed);
        r.add("lead_safe_gap_m", avrisk::lead_safe_gap(s));
        r.add("lag_safe_gap_worst_m", avrisk::lag_safe_gap_worst_case(s));
        r.add("lag_safe_gap_single_m", avrisk::lag_safe_gap_single_event(s));
        r.add("safe_gap_worst_m", avrisk::safe_merging_gap(s, avrisk::MergeMode::WorstCase));
        r.add("safe_gap_single_m", avrisk::safe_merging_gap(s, avrisk::MergeMode::SingleEvent));
        maybe_write(r.table, out, format);
        return 0;
    }
    const auto d = avrisk::io::parse(data_path, avrisk::io::DatasetKind::MergeGaps);
    const Table t = feasibility_table(avrisk::gap_feasibility_report(d.merge_gaps));
    write_csv(t, std::cout);
    maybe_write(t, out, format);
    return 0;
}

// ---------------------------------------------------------------- validate

struct ValidationLine {
    std::string label;
    double closed_form;
    avrisk::mc::SimEstimate est;
};

bool print_validation(const std::vector<ValidationLine>& lines) {
    bool all_pass = true;
    for (const auto& l : lines) {
        const double diff = std::abs(l.est.point - l.closed_form);
        const bool pass = diff <= 3.0 * l.est.std_error;
        all_pass = all_pass && pass;
        std::cout << l.label << ": closed-form " << num(l.closed_form) << " oracle "
                  << num(l.est.point) << " +/- " << num(l.est.std_error) << " ("
                  << l.est.trials << " trials) " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return all_pass;
}

int run_validate(const std::string& scenario, const std::string& kind, std::uint64_t trials,
                 std::uint64_t seed, double dt) {
    const avrisk::mc::SimConfig cfg{trials, seed, dt};
    std::vector<ValidationLine> lines;

    if (scenario == "left-turn" || scenario == "all") {
        const avrisk::LeftTurnScenario s;
        const avrisk::RiskBudget budget{1.4e-5, 1e-4};
        const avrisk::ConflictCollisionLink link{avrisk::kGammaOpposingLeftTurn};
        const auto w = avrisk::waiting_time_pipeline(s, budget, link);
        const double closed =
            avrisk::prob_at_least_one_arrival({w->lambda_max}, w->t_conf);
        lines.push_back({"left-turn conflict at lambda_max", closed,
                         avrisk::mc::simulate_left_turn_conflict(s, w->lambda_max, cfg)});
    }
    if (scenario == "pedestrian" || scenario == "all") {
        for (const std::string k : scenario == "all"
                                       ? std::vector<std::string>{"type1", "type2", "none"}
                                       : std::vector<std::string>{kind}) {
            const auto s = avrisk::PedestrianScenario::defaults(parse_kind(k));
            lines.push_back({"pedestrian " + k, avrisk::conflict_probability(s),
                             avrisk::mc::simulate_pedestrian_conflict(s, cfg)});
        }
    }
    if (scenario == "violation" || scenario == "all") {
        const avrisk::ViolationGeometry g;
        const avrisk::EmpiricalDistribution uniform = avrisk::Histogram{{5.0, 15.0}, {1.0}};
        const auto iv = avrisk::conflict_speed_interval_case_a(g, 10.0, 4.0);
        lines.push_back(
            {"violation case-a co-occupancy", avrisk::interval_mass(uniform, iv->lo, iv->hi),
             avrisk::mc::simulate_violation_conflict(g, 10.0, 4.0, uniform,
                                                     avrisk::ConflictCase::A, cfg)});
    }
    bool pass = print_validation(lines);

    if (scenario == "merge" || scenario == "all") {
        for (double v : {9.68, 11.37, 13.29}) {
            const auto s = avrisk::MergeScenario::at_lane_speed(v);
            for (auto mode : {avrisk::MergeMode::WorstCase, avrisk::MergeMode::SingleEvent}) {
                const bool worst = mode == avrisk::MergeMode::WorstCase;
                const double d_b = worst ? avrisk::lag_safe_gap_worst_case(s)
                                         : avrisk::lag_safe_gap_single_event(s);
                const auto r =
                    avrisk::mc::simulate_merge(s, avrisk::lead_safe_gap(s), d_b, mode, cfg);
                const bool tight = !r.collision && r.min_separation <= 0.05;
                pass = pass && tight;
                std::cout << "merge " << (worst ? "worst" : "single") << " v=" << num(v)
                          << ": boundary min separation " << num(r.min_separation) << " m "
                          << (tight ? "PASS" : "FAIL") << "\n";
            }
        }
    }
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- reproduce

Table make_fig2() {
    Table t{{"rho_s", "a_dec_mps2", "v_max_mps", "v_max_mph"}, {}};
    std::vector<double> rhos;
    for (int i = 0; i <= 28; ++i) rhos.push_back(0.1 + 0.05 * i);  // 0.1 .. 1.5
    for (const auto& p :
         avrisk::sensitivity_sweep_fig2(avrisk::LeftTurnScenario{}, rhos, {2.0, 3.0, 4.0, 6.0, 8.0}))
        t.add({num(p.rho), num(p.a_dec), num(p.v_max), num(avrisk::mps_to_mph(p.v_max))});
    return t;
}

Table make_fig6() {
    Table t{{"scenario", "v_av_mps", "conflict_probability", "star"}, {}};
    for (auto kind : {avrisk::PedestrianKind::ManeuverType1, avrisk::PedestrianKind::ManeuverType2,
                      avrisk::PedestrianKind::NoManeuver}) {
        const auto base = avrisk::PedestrianScenario::defaults(kind);
        std::vector<double> speeds;
        for (int i = 0; i <= 52; ++i) speeds.push_back(2.0 + 0.25 * i);  // 2 .. 15
        for (const auto& p : avrisk::conflict_speed_sweep_fig6(base, speeds))
            t.add({std::string(avrisk::to_string(kind)), num(p.v_av), num(p.probability), "0"});
        // Operating point of the published scenario, marked for plotting.
        t.add({std::string(avrisk::to_string(kind)), num(base.av.speed),
               num(avrisk::conflict_probability(base)), "1"});
    }
    return t;
}

Table make_fig9(const std::string& stats_path, const std::string& speed_hist_path, double v_v,
                double step) {
    Table t{{"interval_start_hhmm", "case", "t_d", "conflict_probability"}, {}};
    const auto stats_data =
        avrisk::io::parse(stats_path, avrisk::io::DatasetKind::ViolationStats);
    const avrisk::EmpiricalDistribution speeds = avrisk::io::to_histogram(
        avrisk::io::parse(speed_hist_path, avrisk::io::DatasetKind::SpeedHistogram));
    const avrisk::EmpiricalDistribution accel = avrisk::Normal{1.5, 0.25};
    const avrisk::ViolationGeometry g;
    for (const auto& row : stats_data.violation_stats) {
        const avrisk::ViolationStats stats{row.expected_violations};
        for (const auto& p : avrisk::conflict_probability_sweep(g, stats, v_v, speeds,
                                                                avrisk::ConflictCase::A, 3.0, 15.0,
                                                                step))
            t.add({row.interval_start_hhmm, "a", num(p.t_d), num(p.conflict_probability)});
        for (const auto& p : avrisk::conflict_probability_sweep(g, stats, v_v, accel,
                                                                avrisk::ConflictCase::B, 3.0, 15.0,
                                                                step))
            t.add({row.interval_start_hhmm, "b", num(p.t_d), num(p.conflict_probability)});
    }
    return t;
}

Table make_fig12() {
    Table t{{"lane_speed_mps", "a_dec_mps2", "safe_gap_m"}, {}};
    std::vector<double> speeds;
    for (int i = 0; i <= 56; ++i) speeds.push_back(2.0 + 0.5 * i);  // 2 .. 30
    for (const auto& p : avrisk::safe_gap_sweep_fig12(speeds, {2.0, 3.0, 4.0, 6.0, 8.0}))
        t.add({num(p.lane_speed), num(p.a_dec), num(p.safe_gap)});
    return t;
}

Table make_table1(const std::string& gaps_path) {
    const auto d = avrisk::io::parse(gaps_path, avrisk::io::DatasetKind::MergeGaps);
    return feasibility_table(avrisk::gap_feasibility_report(d.merge_gaps));
}

int run_reproduce(const std::string& id, const std::string& out_dir, const std::string& stats,
                  const std::string& speed_hist, const std::string& gaps, double v_v) {
    json inputs;
    inputs["artifact"] = id;
    Table t;
    if (id == "fig2") {
        t = make_fig2();
    } else if (id == "fig6") {
        t = make_fig6();
    } else if (id == "fig9") {
        t = make_fig9(stats, speed_hist, v_v, 0.25);
        inputs["stats"] = stats;
        inputs["stats_fnv1a64"] = checksum_hex(read_file(stats));
        inputs["speed_hist"] = speed_hist;
        inputs["speed_hist_fnv1a64"] = checksum_hex(read_file(speed_hist));
        inputs["violator_speed_mps"] = num(v_v);
    } else if (id == "fig12") {
        t = make_fig12();
    } else if (id == "table1") {
        t = make_table1(gaps);
        inputs["data"] = gaps;
        inputs["data_fnv1a64"] = checksum_hex(read_file(gaps));
    } else {
        throw CLI::ValidationError("reproduce", "unknown artifact '" + id +
                                                    "'; see `reproduce --list`");
    }

    const std::string csv_path = out_dir + "/" + id + ".csv";
    const std::string json_path = out_dir + "/" + id + ".json";
    write_table(t, csv_path, "csv");
    write_table(t, json_path, "json");

    json manifest;
    manifest["tool"] = kVersion;
    manifest["inputs"] = inputs;
    manifest["outputs"][id + ".csv"]["fnv1a64"] = checksum_hex(read_file(csv_path));
    manifest["outputs"][id + ".json"]["fnv1a64"] = checksum_hex(read_file(json_path));
    std::ofstream mf(out_dir + "/" + id + ".manifest.json");
    mf << manifest.dump(2) << "\n";
    std::cout << "wrote " << csv_path << ", " << json_path << ", " << out_dir << "/" << id
              << ".manifest.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scenario risk analysis for occluded turns, pedestrian occlusions, red-light "
                 "violations and freeway merging"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "config file supplying flag defaults (flags override)");
    app.require_subcommand(1);

    std::string out, format = "csv";
    const auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "write the report table to this file");
        cmd->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    // left-turn
    auto* lt = app.add_subcommand("left-turn", "occluded unprotected left turn");
    std::string vth = "25mph";
    double rho = 0.7, adec = 4.0, dcz = 12.0, gamma = avrisk::kGammaOpposingLeftTurn;
    double pcoll = 1.4e-5, alpha = 1e-4, av_speed = 4.5, av_rho = 0.7;
    lt->add_option("--vth", vth, "through-vehicle speed (25mph, 11.18mps, unsuffixed = m/s)");
    lt->add_option("--rho", rho, "through-vehicle reaction time, s");
    lt->add_option("--adec", adec, "deceleration limit, m/s^2");
    lt->add_option("--dcz", dcz, "visibility distance to the conflict zone, m");
    lt->add_option("--gamma", gamma, "conflict-to-collision ratio");
    lt->add_option("--pcoll", pcoll, "acceptable collision probability");
    lt->add_option("--alpha", alpha, "significance level of the arrival-rate test");
    lt->add_option("--av-speed", av_speed, "turning speed, m/s");
    lt->add_option("--av-rho", av_rho, "turning vehicle reaction time, s");
    add_output(lt);

    // pedestrian
    auto* ped = app.add_subcommand("pedestrian", "occluded pedestrian scenarios");
    std::string kind = "type2", vav_text, d_text;
    double ped_rate = 1.0 / 60.0, ped_speed = 2.0, ped_gamma = avrisk::kGammaPedestrianUpper;
    ped->add_option("--kind", kind, "scenario kind: type1, type2 or none");
    ped->add_option("--vav", vav_text, "AV speed (unit-suffixed; default per kind)");
    ped->add_option("--d", d_text, "distance to the pedestrian conflict zone, m");
    ped->add_option("--ped-rate", ped_rate, "pedestrian arrival rate, 1/s");
    ped->add_option("--ped-speed", ped_speed, "pedestrian walking speed, m/s");
    ped->add_option("--gamma", ped_gamma, "conflict-to-collision ratio");
    add_output(ped);

    // violation
    auto* vio = app.add_subcommand("violation", "red-light violation conflict");
    double nu = 1.91, cycle = 150.0, interval = 900.0, td = 4.0;
    double accel_mean = 1.5, accel_var = 0.25, vio_gamma = avrisk::kGammaThroughCross;
    std::string vv = "11.18mps", vio_case = "a";
    std::string speed_hist = data_dir() + "/speed_hist_we.csv";
    vio->add_option("--nu", nu, "expected violations per monitoring interval");
    vio->add_option("--cycle", cycle, "signal cycle length, s");
    vio->add_option("--interval", interval, "monitoring interval length, s");
    vio->add_option("--vv", vv, "violator speed (unit-suffixed)");
    vio->add_option("--td", td, "violator decision/crossing start time, s");
    vio->add_option("--case", vio_case, "conflict case: a (free-flow) or b (queued start)")
        ->check(CLI::IsMember({"a", "b"}));
    vio->add_option("--speed-hist", speed_hist, "ego speed histogram CSV (case a)");
    vio->add_option("--accel-mean", accel_mean, "start-up acceleration mean, m/s^2 (case b)");
    vio->add_option("--accel-var", accel_var, "start-up acceleration variance (case b)");
    vio->add_option("--gamma", vio_gamma, "conflict-to-collision ratio");
    add_output(vio);

    // merge
    auto* mrg = app.add_subcommand("merge", "freeway merging safe gaps");
    std::string lane_speed_text, gaps_path = data_dir() + "/ngsim_gaps.csv";
    mrg->add_option("--lane-speed", lane_speed_text, "lane speed (unit-suffixed)");
    mrg->add_option("--data", gaps_path, "observed-gap CSV to classify");
    add_output(mrg);

    // validate
    auto* val = app.add_subcommand("validate", "closed forms vs the Monte Carlo oracle");
    std::string val_scenario = "all", val_kind = "type2";
    std::uint64_t trials = 1'000'000, seed = 42;
    double dt = 0.01;
    val->add_option("scenario", val_scenario, "left-turn, pedestrian, violation, merge or all")
        ->check(CLI::IsMember({"left-turn", "pedestrian", "violation", "merge", "all"}));
    val->add_option("--kind", val_kind, "pedestrian kind: type1, type2 or none");
    val->add_option("--trials", trials, "Monte Carlo trials");
    val->add_option("--seed", seed, "PRNG seed");
    val->add_option("--dt", dt, "integration time step, s");

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "emit a published figure/table as CSV + JSON");
    std::string artifact, out_dir = ".";
    std::string rep_stats = data_dir() + "/montrose_nb.csv";
    std::string rep_hist = data_dir() + "/speed_hist_we.csv";
    std::string rep_gaps = data_dir() + "/ngsim_gaps.csv";
    std::string rep_vv = "11.18mps";
    bool list = false;
    rep->add_option("artifact", artifact, "one of: fig2 fig6 fig9 fig12 table1");
    rep->add_flag("--list", list, "list reproducible artifacts");
    rep->add_option("--out-dir", out_dir, "output directory");
    rep->add_option("--stats", rep_stats, "violation statistics CSV (fig9)");
    rep->add_option("--speed-hist", rep_hist, "ego speed histogram CSV (fig9)");
    rep->add_option("--data", rep_gaps, "observed-gap CSV (table1)");
    rep->add_option("--vv", rep_vv, "violator speed for fig9 (unit-suffixed)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*lt)
            return run_left_turn(parse_speed(vth), rho, adec, dcz, gamma, pcoll, alpha, av_speed,
                                 av_rho, out, format);
        if (*ped)
            return run_pedestrian(kind,
                                  vav_text.empty() ? std::nullopt
                                                   : std::optional<double>(parse_speed(vav_text)),
                                  d_text.empty() ? std::nullopt
                                                 : std::optional<double>(std::stod(d_text)),
                                  ped_rate, ped_speed, ped_gamma, out, format);
        if (*vio)
            return run_violation(nu, cycle, interval, parse_speed(vv), td, vio_case, speed_hist,
                                 accel_mean, accel_var, vio_gamma, out, format);
        if (*mrg)
            return run_merge(lane_speed_text.empty()
                                 ? std::nullopt
                                 : std::optional<double>(parse_speed(lane_speed_text)),
                             gaps_path, out, format);
        if (*val) return run_validate(val_scenario, val_kind, trials, seed, dt);
        if (*rep) {
            if (list) {
                std::cout << "fig2\nfig6\nfig9\nfig12\ntable1\n";
                return 0;
            }
            if (artifact.empty())
                throw CLI::ValidationError("reproduce", "missing artifact id; see --list");
            return run_reproduce(artifact, out_dir, rep_stats, rep_hist, rep_gaps,
                                 parse_speed(rep_vv));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const avrisk::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
