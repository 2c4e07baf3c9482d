// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlink {

// Hufnagel-Valley refractive-index structure profile. Altitudes are metres
// above the site; the profile is fully determined by the ground turbulence
// strength A0 and the high-altitude RMS wind speed.
struct HufnagelValleyProfile {
  double ground_turbulence_a0 = 1.7e-14;  // m^(-2/3)
  double wind_rms = 21.0;                 // m/s
};

// Cn^2(h) for h metres above the site. Strictly positive, -> 0 as h -> inf.
double cn2_hv(double height_m, const HufnagelValleyProfile& profile);

// Weighting applied to Cn^2 inside a path moment.
enum class Cn2Weight {
  kUnit,        // plain column integral (coherence length)
  kAltitude56,  // h^(5/6) (scintillation)
  kUplinkPath,  // (1 - h/L)^(5/3) (uplink beam spread); needs path length
};

// Integration ceiling above site; Cn^2 is negligible beyond at the default
// quadrature tolerance.
inline constexpr double kCn2CeilingM = 30e3;

// Weighted moment  int_{h_lo}^{h_top} Cn^2(h) w(h) dh  by adaptive Simpson
// quadrature at relative tolerance 1e-8. `path_range_m` is the slant range L
// and is required for the uplink weight.
double cn2_moment(const HufnagelValleyProfile& profile, double h_lo_m, double h_top_m,
                  Cn2Weight weight, double path_range_m = 0.0);

// Atmospheric coherence length r0 = (0.42 k^2 sec(zenith) * moment)^(-3/5).
double fried_parameter(const HufnagelValleyProfile& profile, double wavelength_nm,
                       double zenith_rad, double h_lo_m = 0.0, double h_top_m = kCn2CeilingM);

// r0 scales with wavelength as lambda^(6/5); rescales a known value.
double fried_rescale(double r0_m, double wavelength_ref_nm, double wavelength_nm);

// Seeing-based coherence length r0 = 0.98 lambda / seeing.
double fried_from_seeing(double seeing_arcsec, double wavelength_nm);

// Zenith transmittance samples on a strictly increasing wavelength grid.
struct TransmittanceTable {
  struct Entry {
    double wavelength_nm;
    double transmittance;  // in (0, 1]
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
  void validate() const;  // throws std::invalid_argument on bad shape
};

// Linear interpolation between bracketing grid points; exact on the grid.
// Extrapolation is rejected with the covered range in the message.
double zenith_transmittance(const TransmittanceTable& table, double wavelength_nm);

// eta^sec(zenith); identity at zenith 0, decreasing toward the horizon.
double slant_transmittance(double eta_zenith, double zenith_rad);

// Homogeneous-path extinction for horizontal links.
struct ExtinctionSpec {
  double beta_ext_per_m;  // >= 0
  double path_length_m;   // > 0
};

// Beer-Lambert transmittance exp(-beta L), in (0, 1].
double horizontal_transmittance(const ExtinctionSpec& spec);

// Ground-station description: turbulence model, per-band transmittance and
// the handful of per-site constants the shipped studies pin down.
struct SiteProfile {
  std::string name;
  double altitude_m = 0.0;
  HufnagelValleyProfile hv;
  TransmittanceTable transmittance;
  std::optional<double> seeing_arcsec;
  // Site-measured turbulence transmittances (wavelength nm -> eta_tur); when
  // absent the Strehl-ratio default applies.
  std::map<double, double> turbulence_eta;
  // Horizontal-path extinction coefficients (wavelength nm -> beta, 1/m).
  std::map<double, double> extinction_per_m;
  // Reference coherence length for validation sites (value at 500 nm).
  std::optional<double> fried_r0_500nm_m;
  std::string provenance;
};

}  // namespace qlink
