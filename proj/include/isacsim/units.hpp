// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_UNITS_HPP
#define ISACSIM_UNITS_HPP

#include <cmath>

namespace isacsim {

inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kBoltzmann = 1.380649e-23;     // J/K (exact, SI 2019)
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Power ratio in dB to linear.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Linear power ratio to dB.
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// dBm to watts.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// dBsm to square meters.
inline double dbsm_to_sqm(double dbsm) { return std::pow(10.0, dbsm / 10.0); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

} // namespace isacsim

#endif
