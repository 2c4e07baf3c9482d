// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

// Unit conventions used across the library:
//   wavelengths   nm
//   lengths       m
//   angles        rad (degrees only at the CLI boundary)
//   powers        W, ratios in dB where marked _db

namespace qlink {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Loss ledgers floor true zeros at this sentinel instead of -inf.
inline constexpr double kDbFloor = -300.0;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
inline constexpr double arcsec_to_rad(double as) { return as * kPi / (180.0 * 3600.0); }

inline constexpr double nm_to_m(double nm) { return nm * 1e-9; }

inline double to_db(double linear) {
  if (!(linear > 0.0)) return kDbFloor;
  const double db = 10.0 * std::log10(linear);
  return db < kDbFloor ? kDbFloor : db;
}

inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace qlink
