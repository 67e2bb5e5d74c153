#ifndef AVRISK_UNITS_HPP
#define AVRISK_UNITS_HPP

// Unit helpers. Everything inside the library is SI (m, s, m/s, m/s^2);
// mph exists only at I/O boundaries.

namespace avrisk {

inline constexpr double kMphToMps = 0.44704;

constexpr double mph_to_mps(double mph) { return mph * kMphToMps; }
constexpr double mps_to_mph(double mps) { return mps / kMphToMps; }

}  // namespace avrisk

#endif
