#ifndef AVRISK_DISTRIBUTION_HPP
#define AVRISK_DISTRIBUTION_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <variant>
#include <vector>

// Sample/histogram-based and parametric-normal distributions used for the
// ego-vehicle speed and start-up acceleration.

namespace avrisk {

struct Histogram {
    std::vector<double> edges;   // n+1 monotone bin edges
    std::vector<double> counts;  // n non-negative counts, total > 0

    void validate() const {
        if (edges.size() < 2 || counts.size() + 1 != edges.size())
            throw std::invalid_argument("Histogram: need n+1 edges for n counts");
        if (!std::is_sorted(edges.begin(), edges.end()))
            throw std::invalid_argument("Histogram: edges must be non-decreasing");
        double total = 0.0;
        for (double c : counts) {
            if (c < 0.0 || !std::isfinite(c)) throw std::invalid_argument("Histogram: bad count");
            total += c;
        }
        if (!(total > 0.0)) throw std::invalid_argument("Histogram: total count must be > 0");
    }

    double total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }
};

struct Normal {
    double mean = 0.0;
    double variance = 1.0;

    void validate() const {
        if (!(variance > 0.0) || !std::isfinite(mean))
            throw std::invalid_argument("Normal: variance must be > 0");
    }

    double cdf(double x) const {
        return 0.5 * std::erfc((mean - x) / std::sqrt(2.0 * variance));
    }
};

using EmpiricalDistribution = std::variant<Histogram, Normal>;

inline void validate(const EmpiricalDistribution& d) {
    std::visit([](const auto& v) { v.validate(); }, d);
}

/// Probability mass of (lo, hi].  Within a histogram bin the density is taken
/// uniform; for continuous models the endpoint openness carries no mass.
inline double interval_mass(const EmpiricalDistribution& dist, double lo, double hi) {
    if (hi <= lo) return 0.0;
    if (const auto* n = std::get_if<Normal>(&dist)) return n->cdf(hi) - n->cdf(lo);
    const auto& h = std::get<Histogram>(dist);
    double mass = 0.0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double a = h.edges[i], b = h.edges[i + 1];
        if (b <= a) continue;
        const double overlap = std::min(b, hi) - std::max(a, lo);
        if (overlap > 0.0) mass += h.counts[i] * overlap / (b - a);
    }
    return mass / h.total();
}

}  // namespace avrisk

#endif
