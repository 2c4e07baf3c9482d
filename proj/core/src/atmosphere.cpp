// SPDX-License-Identifier: Apache-2.0
#include "qlink/atmosphere.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qlink/quadrature.hpp"
#include "qlink/units.hpp"

namespace qlink {

double cn2_hv(double height_m, const HufnagelValleyProfile& profile) {
  if (height_m < 0.0) throw std::invalid_argument("cn2_hv: height below site");
  if (!(profile.ground_turbulence_a0 > 0.0) || !(profile.wind_rms > 0.0))
    throw std::invalid_argument("cn2_hv: profile coefficients must be positive");
  const double h = height_m;
  const double w = profile.wind_rms / 27.0;
  const double high = 0.00594 * w * w * std::pow(1e-5 * h, 10.0) * std::exp(-h / 1000.0);
  const double mid = 2.7e-16 * std::exp(-2.0 * h / 3000.0);
  const double ground = profile.ground_turbulence_a0 * std::exp(-1e-2 * h);
  return high + mid + ground;
}

double cn2_moment(const HufnagelValleyProfile& profile, double h_lo_m, double h_top_m,
                  Cn2Weight weight, double path_range_m) {
  if (!(h_top_m > h_lo_m) || h_lo_m < 0.0)
    throw std::invalid_argument("cn2_moment: requires h_top > h_lo >= 0");
  if (weight == Cn2Weight::kUplinkPath && !(path_range_m > 0.0))
    throw std::invalid_argument("cn2_moment: uplink weight needs a positive path range");

  auto integrand = [&](double h) {
    const double c = cn2_hv(h, profile);
    switch (weight) {
      case Cn2Weight::kUnit:
        return c;
      case Cn2Weight::kAltitude56:
        return c * std::pow(h, 5.0 / 6.0);
      case Cn2Weight::kUplinkPath: {
        const double frac = 1.0 - h / path_range_m;
        return frac <= 0.0 ? 0.0 : c * std::pow(frac, 5.0 / 3.0);
      }
    }
    return 0.0;
  };
  return integrate_adaptive_simpson(integrand, h_lo_m, h_top_m, kDefaultQuadRelTol);
}

double fried_parameter(const HufnagelValleyProfile& profile, double wavelength_nm,
                       double zenith_rad, double h_lo_m, double h_top_m) {
  if (!(wavelength_nm > 0.0)) throw std::invalid_argument("fried_parameter: wavelength <= 0");
  if (!(zenith_rad >= 0.0 && zenith_rad < kPi / 2.0))
    throw std::invalid_argument("fried_parameter: zenith must lie in [0, 90 deg)");
  const double k = 2.0 * kPi / nm_to_m(wavelength_nm);
  const double moment = cn2_moment(profile, h_lo_m, h_top_m, Cn2Weight::kUnit);
  const double sec = 1.0 / std::cos(zenith_rad);
  return std::pow(0.42 * k * k * sec * moment, -3.0 / 5.0);
}

double fried_rescale(double r0_m, double wavelength_ref_nm, double wavelength_nm) {
  if (!(r0_m > 0.0) || !(wavelength_ref_nm > 0.0) || !(wavelength_nm > 0.0))
    throw std::invalid_argument("fried_rescale: arguments must be positive");
  return r0_m * std::pow(wavelength_nm / wavelength_ref_nm, 6.0 / 5.0);
}

double fried_from_seeing(double seeing_arcsec, double wavelength_nm) {
  if (!(seeing_arcsec > 0.0)) throw std::invalid_argument("fried_from_seeing: seeing <= 0");
  if (!(wavelength_nm > 0.0)) throw std::invalid_argument("fried_from_seeing: wavelength <= 0");
  constexpr double kSeeingConstant = 0.98;
  return kSeeingConstant * nm_to_m(wavelength_nm) / arcsec_to_rad(seeing_arcsec);
}

void TransmittanceTable::validate() const {
  if (entries.empty()) throw std::invalid_argument("TransmittanceTable: no entries");
  double prev = -1.0;
  for (const auto& e : entries) {
    if (!(e.wavelength_nm > prev))
      throw std::invalid_argument("TransmittanceTable: wavelengths must be strictly increasing");
    if (!(e.transmittance > 0.0 && e.transmittance <= 1.0))
      throw std::invalid_argument("TransmittanceTable: transmittance outside (0, 1]");
    prev = e.wavelength_nm;
  }
}

double zenith_transmittance(const TransmittanceTable& table, double wavelength_nm) {
  table.validate();
  const auto& es = table.entries;
  if (wavelength_nm < es.front().wavelength_nm || wavelength_nm > es.back().wavelength_nm) {
    std::ostringstream oss;
    oss << "zenith_transmittance: " << wavelength_nm << " nm outside table range ["
        << es.front().wavelength_nm << ", " << es.back().wavelength_nm << "] nm";
    throw std::out_of_range(oss.str());
  }
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (wavelength_nm == es[i].wavelength_nm) return es[i].transmittance;  // grid points exact
    if (wavelength_nm < es[i].wavelength_nm) {
      const auto& lo = es[i - 1];
      const auto& hi = es[i];
      const double t = (wavelength_nm - lo.wavelength_nm) / (hi.wavelength_nm - lo.wavelength_nm);
      return lo.transmittance + t * (hi.transmittance - lo.transmittance);
    }
  }
  return es.back().transmittance;
}

double slant_transmittance(double eta_zenith, double zenith_rad) {
  if (!(eta_zenith > 0.0 && eta_zenith <= 1.0))
    throw std::invalid_argument("slant_transmittance: eta outside (0, 1]");
  if (!(zenith_rad >= 0.0 && zenith_rad < kPi / 2.0))
    throw std::invalid_argument("slant_transmittance: zenith must lie in [0, 90 deg)");
  return std::pow(eta_zenith, 1.0 / std::cos(zenith_rad));
}

double horizontal_transmittance(const ExtinctionSpec& spec) {
  if (spec.beta_ext_per_m < 0.0)
    throw std::invalid_argument("horizontal_transmittance: beta_ext < 0");
  if (!(spec.path_length_m > 0.0))
    throw std::invalid_argument("horizontal_transmittance: path length <= 0");
  return std::exp(-spec.beta_ext_per_m * spec.path_length_m);
}

}  // namespace qlink
