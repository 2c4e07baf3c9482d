// SPDX-License-Identifier: Apache-2.0
#include "qlink/orbit_doppler.hpp"

#include <cmath>
#include <stdexcept>

namespace qlink {

void PassParameters::validate() const {
  if (!(orbit_radius_m > earth_radius_m) || !(earth_radius_m > 0.0))
    throw std::invalid_argument("PassParameters: requires r > rE > 0");
  if (!(visibility_window_s > 0.0))
    throw std::invalid_argument("PassParameters: window <= 0");
  if (!(angular_speed_rad_s > 0.0))
    throw std::invalid_argument("PassParameters: angular speed <= 0");
  if (!(max_elevation_rad > 0.0 && max_elevation_rad <= kPi / 2.0))
    throw std::invalid_argument("PassParameters: max elevation outside (0, 90 deg]");
  if (!(carrier_thz > 0.0)) throw std::invalid_argument("PassParameters: carrier <= 0");
}

double normalized_doppler(double t_offset_s, const PassParameters& params) {
  params.validate();
  if (std::fabs(t_offset_s) > 0.5 * params.visibility_window_s + 1e-9)
    throw std::invalid_argument("normalized_doppler: time offset outside visibility window");
  const double re = params.earth_radius_m;
  const double r = params.orbit_radius_m;
  const double psi = params.angular_speed_rad_s * t_offset_s;
  // Ground-track offset of the culmination point for passes short of zenith.
  const double track = std::cos(std::acos(re / r * std::cos(params.max_elevation_rad)) -
                                params.max_elevation_rad);
  const double s = std::sin(psi) * track;
  const double num = re * r * s * params.angular_speed_rad_s;
  const double den = std::sqrt(re * re + r * r - 2.0 * re * r * s);
  return -num / (kSpeedOfLight * den);
}

std::vector<DopplerSample> doppler_profile(const PassParameters& params, int n_samples) {
  params.validate();
  if (n_samples < 2) throw std::invalid_argument("doppler_profile: need at least 2 samples");
  const double half = 0.5 * params.visibility_window_s;
  const double carrier_hz = params.carrier_thz * 1e12;
  std::vector<DopplerSample> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double t = -half + params.visibility_window_s * i / (n_samples - 1);
    const double nd = normalized_doppler(t, params);
    out.push_back({t, nd, nd * carrier_hz});
  }
  return out;
}

std::vector<double> default_zenith_grid() {
  std::vector<double> grid;
  for (int deg = 0; deg <= 70; deg += 5) grid.push_back(deg_to_rad(deg));
  return grid;
}

std::vector<ZenithSweepPoint> zenith_sweep(const LinkScenario& scenario,
                                           const std::vector<double>& angles_rad) {
  for (double a : angles_rad)
    if (!(a >= 0.0 && a < kPi / 2.0))
      throw std::invalid_argument("zenith_sweep: angles must lie in [0, 90 deg)");

  // Zenith-referenced baseline regardless of the scenario's own angle.
  LinkScenario base = scenario;
  base.range_m = scenario.range_m * std::cos(scenario.zenith_rad);
  base.zenith_rad = 0.0;
  const double total0 = assemble_ledger(base).total_loss_db;

  std::vector<ZenithSweepPoint> out;
  out.reserve(angles_rad.size());
  for (double a : angles_rad) {
    LinkScenario sc = base;
    sc.zenith_rad = a;
    sc.range_m = base.range_m / std::cos(a);  // flat-earth slant range
    out.push_back({a, assemble_ledger(sc).total_loss_db - total0});
  }
  return out;
}

}  // namespace qlink
