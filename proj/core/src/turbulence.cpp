// SPDX-License-Identifier: Apache-2.0
#include "qlink/turbulence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlink/units.hpp"

namespace qlink {

double BeamGeometry::wavenumber_per_m() const { return 2.0 * kPi / nm_to_m(wavelength_nm); }

double BeamGeometry::half_divergence_rad() const {
  return nm_to_m(wavelength_nm) / (kPi * waist_m);
}

void BeamGeometry::validate() const {
  if (!(waist_m > 0.0)) throw std::invalid_argument("BeamGeometry: waist <= 0");
  if (!(wavelength_nm > 0.0)) throw std::invalid_argument("BeamGeometry: wavelength <= 0");
  if (!(range_m > 0.0)) throw std::invalid_argument("BeamGeometry: range <= 0");
  if (!(zenith_rad >= 0.0 && zenith_rad < kPi / 2.0))
    throw std::invalid_argument("BeamGeometry: zenith must lie in [0, 90 deg)");
  if (site_altitude_m < 0.0) throw std::invalid_argument("BeamGeometry: site altitude < 0");
}

double vacuum_beam_radius(const BeamGeometry& geom) {
  geom.validate();
  const double k = geom.wavenumber_per_m();
  const double q = 2.0 * geom.range_m / (k * geom.waist_m * geom.waist_m);
  return geom.waist_m * std::sqrt(1.0 + q * q);
}

double beam_spread_factor(const BeamGeometry& geom, const HufnagelValleyProfile& profile) {
  geom.validate();
  const double k = geom.wavenumber_per_m();
  const double w = vacuum_beam_radius(geom);
  const double chi = 2.0 * geom.range_m / (k * w * w);
  const double sec = 1.0 / std::cos(geom.zenith_rad);
  const double h_top = std::min(kCn2CeilingM, geom.range_m);
  const double moment =
      cn2_moment(profile, 0.0, h_top, Cn2Weight::kUplinkPath, geom.range_m);
  return 4.35 * std::pow(chi, 5.0 / 6.0) * std::pow(k, 7.0 / 6.0) *
         std::pow(geom.range_m, 5.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * moment;
}

double effective_waist(double vacuum_radius_m, double spread_factor) {
  if (!(vacuum_radius_m > 0.0)) throw std::invalid_argument("effective_waist: W <= 0");
  if (spread_factor < 0.0) throw std::invalid_argument("effective_waist: T < 0");
  return vacuum_radius_m * std::sqrt(1.0 + spread_factor);
}

double mean_onaxis_intensity(double vacuum_radius_m, double effective_waist_m) {
  if (!(effective_waist_m >= vacuum_radius_m) || !(vacuum_radius_m > 0.0))
    throw std::invalid_argument("mean_onaxis_intensity: requires We >= W > 0");
  const double r = vacuum_radius_m / effective_waist_m;
  return r * r;
}

double jitter_variance(double d_over_r0, double wavelength_nm, double aperture_m,
                       JitterCoefficient variant) {
  if (!(d_over_r0 > 0.0) || !(wavelength_nm > 0.0) || !(aperture_m > 0.0))
    throw std::invalid_argument("jitter_variance: arguments must be positive");
  const double c = variant == JitterCoefficient::kMainText ? 0.182 : 0.36;
  const double ratio = nm_to_m(wavelength_nm) / aperture_m;
  return c * std::pow(d_over_r0, 5.0 / 3.0) * ratio * ratio;
}

double beta_parameter(double theta_b_half_rad, double sigma_j2_rad2) {
  if (!(theta_b_half_rad > 0.0) || !(sigma_j2_rad2 > 0.0))
    throw std::invalid_argument("beta_parameter: arguments must be positive");
  return theta_b_half_rad * theta_b_half_rad / (4.0 * sigma_j2_rad2);
}

double beta_mean_fading(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta_mean_fading: beta <= 0");
  return beta / (beta + 1.0);
}

double rytov_log_variance(const BeamGeometry& geom, const HufnagelValleyProfile& profile) {
  geom.validate();
  const double k = geom.wavenumber_per_m();
  const double sec = 1.0 / std::cos(geom.zenith_rad);
  const double h_top = std::min(kCn2CeilingM, geom.range_m);
  const double moment = cn2_moment(profile, 0.0, h_top, Cn2Weight::kAltitude56);
  return 2.24 * std::pow(k, 7.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * moment;
}

double scintillation_index(double sigma_l2) {
  if (sigma_l2 < 0.0) throw std::invalid_argument("scintillation_index: sigma_l^2 < 0");
  return std::expm1(sigma_l2);
}

double strehl_ratio(double d_over_r0) {
  if (d_over_r0 < 0.0) throw std::invalid_argument("strehl_ratio: D/r0 < 0");
  return std::pow(1.0 + std::pow(d_over_r0, 5.0 / 3.0), -6.0 / 5.0);
}

double beam_wander_rms(const BeamGeometry& geom, double fried_r0_m) {
  geom.validate();
  if (!(fried_r0_m > 0.0)) throw std::invalid_argument("beam_wander_rms: r0 <= 0");
  const double sec = 1.0 / std::cos(geom.zenith_rad);
  const double lam = nm_to_m(geom.wavelength_nm);
  const double two_w0 = 2.0 * geom.waist_m;
  return 0.73 * geom.range_m * sec * (lam / two_w0) * std::pow(two_w0 / fried_r0_m, 5.0 / 6.0);
}

double beam_wander_angle(const BeamGeometry& geom, double fried_r0_m) {
  return beam_wander_rms(geom, fried_r0_m) / geom.range_m;
}

double beam_wander_loss_db(double theta_bw_rad, double theta_b_half_rad) {
  if (theta_bw_rad < 0.0) throw std::invalid_argument("beam_wander_loss_db: theta_BW < 0");
  if (!(theta_b_half_rad > 0.0))
    throw std::invalid_argument("beam_wander_loss_db: divergence <= 0");
  const double q = theta_bw_rad / theta_b_half_rad;
  // -10 log10(exp(-2 q^2)) without the round trip through exp
  return 20.0 * q * q / std::log(10.0);
}

double turbulence_loss_db(const BeamGeometry& geom, const SiteProfile& site,
                          double wavelength_nm) {
  geom.validate();
  if (auto it = site.turbulence_eta.find(wavelength_nm); it != site.turbulence_eta.end())
    return -to_db(it->second);
  const double r0 = fried_parameter(site.hv, wavelength_nm, geom.zenith_rad);
  return -to_db(strehl_ratio(2.0 * geom.waist_m / r0));
}

TurbulenceDiagnostics turbulence_diagnostics(const BeamGeometry& geom, const SiteProfile& site,
                                             double theta_b_half_rad,
                                             JitterCoefficient variant) {
  geom.validate();
  TurbulenceDiagnostics d{};
  d.spread_factor = beam_spread_factor(geom, site.hv);
  d.vacuum_radius_m = vacuum_beam_radius(geom);
  d.effective_waist_m = effective_waist(d.vacuum_radius_m, d.spread_factor);
  d.rytov_log_variance = rytov_log_variance(geom, site.hv);
  d.scintillation_index = scintillation_index(d.rytov_log_variance);
  d.fried_r0_m = fried_parameter(site.hv, geom.wavelength_nm, geom.zenith_rad);
  d.d_over_r0 = 2.0 * geom.waist_m / d.fried_r0_m;
  d.jitter_variance =
      jitter_variance(d.d_over_r0, geom.wavelength_nm, 2.0 * geom.waist_m, variant);
  d.beta = beta_parameter(theta_b_half_rad, d.jitter_variance);
  d.wander_rms_m = beam_wander_rms(geom, d.fried_r0_m);
  d.wander_angle_rad = d.wander_rms_m / geom.range_m;
  return d;
}

}  // namespace qlink
