#ifndef AVRISK_IO_INGEST_HPP
#define AVRISK_IO_INGEST_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "avrisk/distribution.hpp"
#include "avrisk/io/csv.hpp"
#include "avrisk/merging.hpp"
#include "avrisk/units.hpp"
#include "avrisk/violation.hpp"

// Parsing and validation of the three input data formats into domain types.
// Units are normalized to SI on load; see FORMATS.md for the schemas.

namespace avrisk::io {

enum class DatasetKind { ViolationStats, SpeedHistogram, MergeGaps };

struct ViolationStatsRow {
    std::string interval_start_hhmm;
    std::string approach;
    double expected_violations;
};

struct SpeedHistogramRow {
    double bin_lo_mps;
    double bin_hi_mps;
    double count;
};

struct Dataset {
    DatasetKind kind;
    std::string source;
    std::vector<ViolationStatsRow> violation_stats;   // kind == ViolationStats
    std::vector<SpeedHistogramRow> speed_histogram;   // kind == SpeedHistogram
    std::vector<ObservedGapRecord> merge_gaps;        // kind == MergeGaps
};

namespace detail {

inline void require_columns(const CsvTable& t, const std::vector<std::string>& wanted,
                            const std::string& path) {
    if (t.header.size() < wanted.size())
        throw SchemaMismatch(path + ": expected columns " + wanted.front() + ",...; got " +
                             std::to_string(t.header.size()) + " columns");
    for (std::size_t i = 0; i < wanted.size(); ++i)
        if (t.header[i] != wanted[i])
            throw SchemaMismatch(path + ": column " + std::to_string(i + 1) + " is '" +
                                 t.header[i] + "', expected '" + wanted[i] + "'");
}

inline void require_cells(const std::vector<std::string>& row, std::size_t n,
                          const std::string& path, std::size_t lineno) {
    if (row.size() < n)
        throw SchemaMismatch(path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(n) + " cells, got " + std::to_string(row.size()));
}

}  // namespace detail

inline Dataset parse(const std::string& path, DatasetKind kind) {
    const CsvTable t = read_csv(path);
    if (t.rows.empty()) throw EmptyFile("no data rows: " + path);
    Dataset d;
    d.kind = kind;
    d.source = path;
    switch (kind) {
        case DatasetKind::ViolationStats: {
            detail::require_columns(t, {"interval_start_hhmm", "approach", "expected_violations"},
                                    path);
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                const auto& row = t.rows[r];
                const auto ln = t.line_numbers[r];
                detail::require_cells(row, 3, path, ln);
                const double nu = parse_double(row[2], path, ln, "expected_violations");
                if (nu < 0.0 || !std::isfinite(nu))
                    throw UnitError(path + ":" + std::to_string(ln) +
                                    ": expected_violations must be finite and >= 0");
                d.violation_stats.push_back({row[0], row[1], nu});
            }
            break;
        }
        case DatasetKind::SpeedHistogram: {
            detail::require_columns(t, {"bin_lo_mps", "bin_hi_mps", "count"}, path);
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                const auto& row = t.rows[r];
                const auto ln = t.line_numbers[r];
                detail::require_cells(row, 3, path, ln);
                const double lo = parse_double(row[0], path, ln, "bin_lo_mps");
                const double hi = parse_double(row[1], path, ln, "bin_hi_mps");
                const double count = parse_double(row[2], path, ln, "count");
                if (lo < 0.0 || hi <= lo || hi >= 100.0)
                    throw UnitError(path + ":" + std::to_string(ln) +
                                    ": speed bin outside [0, 100) m/s or inverted");
                if (count < 0.0 || !std::isfinite(count))
                    throw UnitError(path + ":" + std::to_string(ln) + ": negative count");
                d.speed_histogram.push_back({lo, hi, count});
            }
            break;
        }
        case DatasetKind::MergeGaps: {
            detail::require_columns(t, {"interval_label", "lane_speed_mph", "observed_gap_m"},
                                    path);
            const bool has_speeds = t.header.size() >= 6 && t.header[3] == "v_av_mps" &&
                                    t.header[4] == "v_f_mps" && t.header[5] == "v_b_mps";
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                const auto& row = t.rows[r];
                const auto ln = t.line_numbers[r];
                detail::require_cells(row, 3, path, ln);
                ObservedGapRecord rec;
                rec.interval_label = row[0];
                rec.lane_speed = mph_to_mps(parse_double(row[1], path, ln, "lane_speed_mph"));
                rec.observed_gap = parse_double(row[2], path, ln, "observed_gap_m");
                if (rec.lane_speed < 0.0 || rec.lane_speed >= 100.0)
                    throw UnitError(path + ":" + std::to_string(ln) + ": lane speed out of range");
                if (!(rec.observed_gap > 0.0) || rec.observed_gap >= 10000.0)
                    throw UnitError(path + ":" + std::to_string(ln) + ": gap outside (0, 10 km)");
                if (has_speeds && row.size() >= 6) {
                    rec.v_av = parse_double(row[3], path, ln, "v_av_mps");
                    rec.v_f = parse_double(row[4], path, ln, "v_f_mps");
                    rec.v_b = parse_double(row[5], path, ln, "v_b_mps");
                }
                d.merge_gaps.push_back(rec);
            }
            break;
        }
    }
    return d;
}

/// Writes a dataset back in its file schema (inverse of parse on valid data).
inline void serialize(const Dataset& d, std::ostream& out) {
    out.precision(10);
    switch (d.kind) {
        case DatasetKind::ViolationStats:
            out << "interval_start_hhmm,approach,expected_violations\n";
            for (const auto& r : d.violation_stats)
                out << r.interval_start_hhmm << ',' << r.approach << ',' << r.expected_violations
                    << '\n';
            break;
        case DatasetKind::SpeedHistogram:
            out << "bin_lo_mps,bin_hi_mps,count\n";
            for (const auto& r : d.speed_histogram)
                out << r.bin_lo_mps << ',' << r.bin_hi_mps << ',' << r.count << '\n';
            break;
        case DatasetKind::MergeGaps: {
            const bool has_speeds =
                !d.merge_gaps.empty() && d.merge_gaps.front().v_av.has_value();
            out << "interval_label,lane_speed_mph,observed_gap_m";
            if (has_speeds) out << ",v_av_mps,v_f_mps,v_b_mps";
            out << '\n';
            for (const auto& r : d.merge_gaps) {
                out << r.interval_label << ',' << mps_to_mph(r.lane_speed) << ','
                    << r.observed_gap;
                if (has_speeds) out << ',' << *r.v_av << ',' << *r.v_f << ',' << *r.v_b;
                out << '\n';
            }
            break;
        }
    }
}

/// Speed histogram rows as an EmpiricalDistribution (bins must be contiguous).
inline Histogram to_histogram(const Dataset& d) {
    if (d.kind != DatasetKind::SpeedHistogram)
        throw std::invalid_argument("to_histogram: dataset is not a speed histogram");
    Histogram h;
    for (const auto& r : d.speed_histogram) {
        if (h.edges.empty())
            h.edges.push_back(r.bin_lo_mps);
        else if (std::abs(h.edges.back() - r.bin_lo_mps) > 1e-9)
            throw SchemaMismatch(d.source + ": histogram bins are not contiguous");
        h.edges.push_back(r.bin_hi_mps);
        h.counts.push_back(r.count);
    }
    h.validate();
    return h;
}

}  // namespace avrisk::io

#endif
