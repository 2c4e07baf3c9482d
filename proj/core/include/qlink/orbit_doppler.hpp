// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qlink/link_budget.hpp"
#include "qlink/units.hpp"

namespace qlink {

// Circular-orbit pass over a ground station, phased so t = 0 is culmination
// and psi(t) - psi(t0) = omega * t.
struct PassParameters {
  double earth_radius_m = 6.4e6;
  double orbit_radius_m = 6.9e6;       // from Earth's centre
  double visibility_window_s = 1196.0; // scan interval, centred on culmination
  double max_elevation_rad = kPi / 2.0;
  double angular_speed_rad_s = 0.00105;
  double carrier_thz = 380.0;

  void validate() const;
};

// Normalized Doppler shift df/f at t seconds from culmination. Zero exactly
// at culmination; bounded by r * omega / c.
double normalized_doppler(double t_offset_s, const PassParameters& params);

struct DopplerSample {
  double t_s;
  double df_over_f;
  double df_hz;
};

// Uniform time grid across the visibility window (endpoints included, which
// is where the extrema sit for a culminating pass).
std::vector<DopplerSample> doppler_profile(const PassParameters& params, int n_samples);

struct ZenithSweepPoint {
  double angle_rad;
  double excess_loss_db;  // total(theta) - total(0), >= 0 and non-decreasing
};

// Cumulative excess loss versus zenith angle. The scenario is re-evaluated
// per angle with slant range L(theta) = L(0) sec(theta) plus the ledger's
// own zenith laws; the result starts at exactly 0 dB.
std::vector<ZenithSweepPoint> zenith_sweep(const LinkScenario& scenario,
                                           const std::vector<double>& angles_rad);

// Default sweep grid: 0..70 deg in 5 deg steps.
std::vector<double> default_zenith_grid();

}  // namespace qlink
