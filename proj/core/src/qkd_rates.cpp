// SPDX-License-Identifier: Apache-2.0
#include "qlink/qkd_rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlink/units.hpp"

namespace qlink {

namespace {
constexpr double kVacuumError = 0.5;  // e0: dark counts are random
}

void DecoyParams::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(std::string("DecoyParams: ") + msg); };
  if (!(mean_photon_mu > decoy_nu) || decoy_nu < 0.0) fail("requires mu > nu >= 0");
  if (!(dark_count_y0 >= 0.0 && dark_count_y0 <= 1.0)) fail("Y0 outside [0, 1]");
  if (!(detector_error >= 0.0 && detector_error <= 1.0)) fail("e_det outside [0, 1]");
  if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0))
    fail("detector efficiency outside (0, 1]");
  if (!(basis_factor_q > 0.0 && basis_factor_q <= 1.0)) fail("q outside (0, 1]");
  if (!(ec_efficiency_f >= 1.0)) fail("f < 1");
  if (!(source_rate_hz > 0.0)) fail("source rate <= 0");
  if (!(signal_counts_n_mu > 0.0) || decoy_counts_n_nu < 0.0) fail("bad count split");
  if (!(raw_key_n > 0.0)) fail("raw key length <= 0");
  if (!(eps > eps_bar && eps_bar > eps_bar_prime && eps_bar_prime >= 0.0))
    throw std::invalid_argument(
        "DecoyParams: security epsilons must satisfy eps > eps_bar > eps_bar' >= 0");
  if (!(eps - eps_bar - eps_ec > 0.0))
    throw std::invalid_argument("DecoyParams: requires eps - eps_bar - eps_EC > 0");
}

void EntangledParams::validate() const {
  if (!(pair_rate_hz > 0.0)) throw std::invalid_argument("EntangledParams: pair rate <= 0");
  if (!(signal_gain_q_lambda >= 0.0 && signal_gain_q_lambda <= 1.0))
    throw std::invalid_argument("EntangledParams: gain outside [0, 1]");
  if (!(qber_e >= 0.0 && qber_e <= 1.0))
    throw std::invalid_argument("EntangledParams: QBER outside [0, 1]");
  if (!(ec_efficiency_f >= 1.0)) throw std::invalid_argument("EntangledParams: f < 1");
}

bool threshold_check(double qber) { return qber < kQberThreshold; }

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary_entropy: x outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double channel_eta(double loss_db, double detector_efficiency) {
  if (loss_db < 0.0) throw std::invalid_argument("channel_eta: loss < 0 dB");
  if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0))
    throw std::invalid_argument("channel_eta: detector efficiency outside (0, 1]");
  return from_db(-loss_db) * detector_efficiency;
}

double decoy_gain_qmu(double eta, double mu, double y0) {
  if (eta < 0.0 || mu < 0.0 || y0 < 0.0)
    throw std::invalid_argument("decoy_gain_qmu: arguments must be non-negative");
  return y0 - std::expm1(-eta * mu);
}

double qber_decoy(const DecoyParams& params, double loss_db) {
  params.validate();
  const double eta = channel_eta(loss_db, params.detector_efficiency);
  const double clicks = -std::expm1(-eta * params.mean_photon_mu);
  const double q_mu = params.dark_count_y0 + clicks;
  if (!(q_mu > 0.0)) throw std::domain_error("qber_decoy: zero signal gain (no signal)");
  return (kVacuumError * params.dark_count_y0 + params.detector_error * clicks) / q_mu;
}

double security_delta(const DecoyParams& params) {
  params.validate();
  const double margin = params.eps - params.eps_bar - params.eps_ec;
  const double smooth = params.eps_bar - params.eps_bar_prime;
  return 2.0 * std::log2(1.0 / (2.0 * margin)) +
         7.0 * std::sqrt(params.raw_key_n * std::log2(2.0 / smooth));
}

DecoySinglePhotonBounds decoy_single_photon_bounds(const DecoyParams& params, double eta) {
  params.validate();
  if (!(params.decoy_nu > 0.0))
    throw std::invalid_argument("decoy bounds: need a non-vacuum decoy intensity");
  const double mu = params.mean_photon_mu;
  const double nu = params.decoy_nu;
  const double y0 = params.dark_count_y0;
  const double clicks_mu = -std::expm1(-eta * mu);
  const double clicks_nu = -std::expm1(-eta * nu);
  const double q_mu = y0 + clicks_mu;
  const double q_nu = y0 + clicks_nu;
  const double e_nu = (kVacuumError * y0 + params.detector_error * clicks_nu) / q_nu;

  const double y1 = mu / (mu * nu - nu * nu) *
                    (q_nu * std::exp(nu) - q_mu * std::exp(mu) * nu * nu / (mu * mu) -
                     (mu * mu - nu * nu) / (mu * mu) * y0);
  const double y1_clamped = std::max(y1, 0.0);
  const double q1 = y1_clamped * mu * std::exp(-mu);
  double e1 = 0.5;
  if (y1_clamped > 0.0) {
    e1 = (e_nu * q_nu * std::exp(nu) - kVacuumError * y0) / (y1_clamped * nu);
    e1 = std::clamp(e1, 0.0, 0.5);
  }
  return {y1_clamped, q1, e1};
}

KeyRateResult keyrate_decoy(const DecoyParams& params, double loss_db) {
  params.validate();
  const double eta = channel_eta(loss_db, params.detector_efficiency);
  const double q_mu = decoy_gain_qmu(eta, params.mean_photon_mu, params.dark_count_y0);
  const double e_mu = qber_decoy(params, loss_db);
  const auto sp = decoy_single_photon_bounds(params, eta);
  const double delta = security_delta(params);
  const double duty =
      params.signal_counts_n_mu / (params.signal_counts_n_mu + params.decoy_counts_n_nu);
  const double bracket = -q_mu * params.ec_efficiency_f * binary_entropy(e_mu) +
                         sp.q1 * (1.0 - binary_entropy(sp.e1) -
                                  q_mu * delta / params.signal_counts_n_mu);
  const double per_pulse = std::max(0.0, params.basis_factor_q * duty * bracket);

  KeyRateResult result;
  result.qber = e_mu;
  result.key_rate_per_pulse = per_pulse;
  result.key_rate_bps = per_pulse * params.source_rate_hz;
  result.secure = threshold_check(e_mu) && per_pulse > 0.0;
  return result;
}

KeyRateResult keyrate_bbm92(const EntangledParams& params) {
  params.validate();
  const double h = binary_entropy(params.qber_e);
  const double per_pulse = std::max(
      0.0, 0.5 * params.signal_gain_q_lambda * (1.0 - h - params.ec_efficiency_f * h));

  KeyRateResult result;
  result.qber = params.qber_e;
  result.key_rate_per_pulse = per_pulse;
  result.key_rate_bps = per_pulse * params.pair_rate_hz;
  result.secure = threshold_check(params.qber_e) && per_pulse > 0.0;
  return result;
}

DetectorFit fit_detector_params(std::span<const std::pair<double, double>> points, double mu,
                                double detector_efficiency) {
  if (points.size() < 2)
    throw std::invalid_argument("fit_detector_params: need at least two points");
  for (const auto& [loss, qber] : points) {
    if (loss < 0.0) throw std::invalid_argument("fit_detector_params: negative loss");
    if (!(qber > 0.0 && qber < 0.5))
      throw std::invalid_argument("fit_detector_params: QBER outside (0, 0.5)");
  }

  std::vector<double> s(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double eta = channel_eta(points[i].first, detector_efficiency);
    s[i] = -std::expm1(-eta * mu);
  }
  // Degeneracy check: the model cannot separate Y0 from e_det when every
  // observation sits at the same transmission.
  const auto [smin, smax] = std::minmax_element(s.begin(), s.end());
  if (*smax - *smin <= 1e-15 * *smax)
    throw std::invalid_argument("fit_detector_params: degenerate system (identical losses)");

  // The model E (Y0 + s) = Y0/2 + e s is linear in (Y0, e); solve the normal
  // equations of  Y0 (1/2 - E_i) + e s_i = E_i s_i  for the starting point.
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double e = points[i].second;
    const double c1 = 0.5 - e;
    const double c2 = s[i];
    const double rhs = e * s[i];
    a11 += c1 * c1;
    a12 += c1 * c2;
    a22 += c2 * c2;
    b1 += c1 * rhs;
    b2 += c2 * rhs;
  }
  const double det = a11 * a22 - a12 * a12;
  if (std::fabs(det) < 1e-300)
    throw std::invalid_argument("fit_detector_params: degenerate system");
  double y0 = (b1 * a22 - b2 * a12) / det;
  double ed = (a11 * b2 - a12 * b1) / det;
  y0 = std::max(y0, 0.0);
  ed = std::clamp(ed, 0.0, 0.5);

  // Gauss-Newton polish on the true QBER residuals.
  auto predict = [&](double y, double e, double si) {
    return (kVacuumError * y + e * si) / (y + si);
  };
  for (int iter = 0; iter < 50; ++iter) {
    double g11 = 0, g12 = 0, g22 = 0, r1 = 0, r2 = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double q = y0 + s[i];
      const double f = predict(y0, ed, s[i]);
      const double res = f - points[i].second;
      const double dfdy = (kVacuumError * q - (kVacuumError * y0 + ed * s[i])) / (q * q);
      const double dfde = s[i] / q;
      g11 += dfdy * dfdy;
      g12 += dfdy * dfde;
      g22 += dfde * dfde;
      r1 += dfdy * res;
      r2 += dfde * res;
    }
    const double gdet = g11 * g22 - g12 * g12;
    if (std::fabs(gdet) < 1e-300) break;
    const double dy = (r1 * g22 - r2 * g12) / gdet;
    const double de = (g11 * r2 - g12 * r1) / gdet;
    y0 = std::max(y0 - dy, 0.0);
    ed = std::clamp(ed - de, 0.0, 0.5);
    if (std::fabs(dy) < 1e-18 && std::fabs(de) < 1e-18) break;
  }

  DetectorFit fit;
  fit.dark_count_y0 = y0;
  fit.detector_error = ed;
  fit.residuals.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    fit.residuals[i] = predict(y0, ed, s[i]) - points[i].second;
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::fabs(fit.residuals[i]));
  }
  return fit;
}

}  // namespace qlink
