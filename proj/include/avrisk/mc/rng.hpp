#ifndef AVRISK_MC_RNG_HPP
#define AVRISK_MC_RNG_HPP

#include <cmath>
#include <cstdint>

// Counter-based per-trial random streams: stream state is derived only from
// (seed, trial index), so results do not depend on scheduling or trial order.

namespace avrisk::mc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) {
        // Mix seed and trial index so nearby trials get unrelated streams.
        state_ = seed;
        (void)splitmix64(state_);
        state_ ^= trial * 0xD1B54A32D192ED03ULL;
        (void)splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential with the given rate (> 0).
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    /// Normal via Box-Muller (no spare caching; streams stay stateless-ish).
    double normal(double mean, double stddev) {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    std::uint64_t state_;
};

}  // namespace avrisk::mc

#endif
