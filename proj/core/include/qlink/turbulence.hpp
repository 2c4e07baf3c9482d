// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qlink/atmosphere.hpp"

namespace qlink {

// Gaussian-beam slant-path geometry. The waist is the 1/e^2 radius at the
// transmitter; the derived half divergence is the diffraction-limited value
// (engineered divergences live on the optical terminals instead).
struct BeamGeometry {
  double waist_m;        // W0
  double wavelength_nm;  // lambda
  double range_m;        // L
  double zenith_rad;     // theta, [0, 90 deg)
  double site_altitude_m = 0.0;

  double wavenumber_per_m() const;      // k = 2 pi / lambda
  double half_divergence_rad() const;   // lambda / (pi W0)
  void validate() const;
};

// Diffraction-only beam radius at the receiver:
//   W = W0 sqrt(1 + (2L / (k W0^2))^2);  W -> (lambda/(pi W0)) L far out.
double vacuum_beam_radius(const BeamGeometry& geom);

// Turbulent spread factor
//   T = 4.35 chi^(5/6) k^(7/6) L^(5/6) sec^(11/6)(theta) * uplink moment,
// chi = 2L/(k W^2) against the diffracted radius W.
double beam_spread_factor(const BeamGeometry& geom, const HufnagelValleyProfile& profile);

// We = W sqrt(1 + T)
double effective_waist(double vacuum_radius_m, double spread_factor);

// On-axis mean intensity relative to vacuum: (W / We)^2, in (0, 1].
double mean_onaxis_intensity(double vacuum_radius_m, double effective_waist_m);

// The two jitter-variance coefficients carried by the source material; they
// differ by about 2x and are not reconciled there, so both stay selectable.
enum class JitterCoefficient { kMainText, kAppendix };  // 0.182 vs 0.36

// One-axis angular jitter variance  c (D/r0)^(5/3) (lambda/D)^2  [rad^2].
double jitter_variance(double d_over_r0, double wavelength_nm, double aperture_m,
                       JitterCoefficient variant = JitterCoefficient::kMainText);

// beta = Theta_B^2 / (4 sigma_j^2); mean of the induced beta fading is
// beta / (beta + 1).
double beta_parameter(double theta_b_half_rad, double sigma_j2_rad2);
double beta_mean_fading(double beta);

// Rytov log-intensity variance
//   sigma_l^2 = 2.24 k^(7/6) sec^(11/6)(theta) * h^(5/6) moment.
double rytov_log_variance(const BeamGeometry& geom, const HufnagelValleyProfile& profile);

// Scintillation index sigma_S^2 = exp(sigma_l^2) - 1.
double scintillation_index(double sigma_l2);

// S = [1 + (D/r0)^(5/3)]^(-6/5), in (0, 1], monotone decreasing.
double strehl_ratio(double d_over_r0);

// RMS wander of the beam centroid at range:
//   sqrt(<rc^2>) = 0.73 Z sec(zeta) (lambda / 2 W0) (2 W0 / r0)^(5/6).
double beam_wander_rms(const BeamGeometry& geom, double fried_r0_m);

// Angular wander theta_BW = sqrt(<rc^2>) / L.
double beam_wander_angle(const BeamGeometry& geom, double fried_r0_m);

// Mean far-field Gaussian intensity at angular offset theta_BW:
//   loss = -10 log10( exp(-2 theta_BW^2 / Theta_B,half^2) )  >= 0 dB.
double beam_wander_loss_db(double theta_bw_rad, double theta_b_half_rad);

// Turbulence transmission loss for a transmit aperture D = 2 W0. A site
// override eta_tur for the wavelength wins; otherwise the Strehl ratio at
// D/r0 from the site profile is used.
double turbulence_loss_db(const BeamGeometry& geom, const SiteProfile& site,
                          double wavelength_nm);

// Snapshot of every turbulence statistic for one beam/site pairing.
struct TurbulenceDiagnostics {
  double spread_factor;        // T
  double vacuum_radius_m;      // W
  double effective_waist_m;    // We
  double rytov_log_variance;   // sigma_l^2
  double scintillation_index;  // sigma_S^2
  double jitter_variance;      // sigma_j^2, rad^2
  double beta;                 // fading parameter
  double fried_r0_m;
  double d_over_r0;
  double wander_rms_m;         // sqrt(<rc^2>)
  double wander_angle_rad;     // theta_BW
};

// theta_b_half_rad: the link's working divergence (engineered, not
// necessarily diffraction limited); feeds beta.
TurbulenceDiagnostics turbulence_diagnostics(const BeamGeometry& geom, const SiteProfile& site,
                                             double theta_b_half_rad,
                                             JitterCoefficient variant = JitterCoefficient::kMainText);

}  // namespace qlink
