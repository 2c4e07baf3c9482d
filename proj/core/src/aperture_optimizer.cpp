// SPDX-License-Identifier: Apache-2.0
#include "qlink/aperture_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlink/units.hpp"

namespace qlink {

std::vector<ApertureSweepRow> sweep_aperture(const BeamGeometry& geom_template,
                                             const SiteProfile& site,
                                             std::vector<double> diameters_m,
                                             double working_r0_m) {
  if (diameters_m.empty()) throw std::invalid_argument("sweep_aperture: no diameters");
  for (double d : diameters_m)
    if (!(d > 0.0)) throw std::invalid_argument("sweep_aperture: non-positive diameter");
  if (working_r0_m < 0.0) throw std::invalid_argument("sweep_aperture: r0 < 0");
  if (working_r0_m == 0.0)
    working_r0_m = fried_parameter(site.hv, geom_template.wavelength_nm,
                                   geom_template.zenith_rad);
  std::sort(diameters_m.begin(), diameters_m.end());

  const double theta_ref =
      2.0 * nm_to_m(geom_template.wavelength_nm) / (kPi * working_r0_m);

  std::vector<ApertureSweepRow> rows;
  rows.reserve(diameters_m.size());
  for (double d : diameters_m) {
    BeamGeometry geom = geom_template;
    geom.waist_m = 0.5 * d;
    geom.validate();
    const double theta_bw = beam_wander_angle(geom, working_r0_m);
    const double wander_db = beam_wander_loss_db(theta_bw, theta_ref);
    const double turb_db = -to_db(strehl_ratio(d / working_r0_m));
    rows.push_back({d, wander_db, turb_db, wander_db + turb_db});
  }
  return rows;
}

OptimalAperture optimal_aperture(std::span<const ApertureSweepRow> rows) {
  if (rows.size() < 3)
    throw std::invalid_argument("optimal_aperture: need at least three rows");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].total_db < rows[best].total_db) best = i;  // ties keep smaller D
  return {rows[best].diameter_m, best != 0 && best != rows.size() - 1};
}

DOverR0Regime d_over_r0_guidance(double d_over_r0) {
  if (d_over_r0 < 0.0) throw std::invalid_argument("d_over_r0_guidance: ratio < 0");
  if (d_over_r0 < 1.0) return DOverR0Regime::kWanderRegime;
  if (d_over_r0 <= 2.0) return DOverR0Regime::kSafe;
  return DOverR0Regime::kDegrading;
}

}  // namespace qlink
