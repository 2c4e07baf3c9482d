// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

namespace qlink {

// Decoy-state BB84 with a weak coherent pulse source. Count fields are Bob's
// received tallies; the epsilons parameterize the finite-key deduction.
struct DecoyParams {
  double mean_photon_mu = 0.5;
  double decoy_nu = 0.05;
  double dark_count_y0 = 0.0;      // per-pulse background/dark click probability
  double detector_error = 0.0;     // e_detector
  double detector_efficiency = 1.0;
  double basis_factor_q = 0.5;
  double ec_efficiency_f = 1.22;
  double source_rate_hz = 10e6;
  double signal_counts_n_mu = 1e10;
  double decoy_counts_n_nu = 1e10;
  double raw_key_n = 5e9;
  double eps = 1e-9;
  double eps_bar = 1e-10;
  double eps_bar_prime = 1e-11;
  double eps_ec = 1e-10;

  void validate() const;
};

struct EntangledParams {
  double pair_rate_hz = 10e6;
  double signal_gain_q_lambda = 0.0;  // two-fold coincidence probability per pair
  double qber_e = 0.0;
  double ec_efficiency_f = 1.22;

  void validate() const;
};

struct KeyRateResult {
  double qber = 0.0;
  double key_rate_per_pulse = 0.0;  // clamped at 0
  double key_rate_bps = 0.0;        // per-pulse rate times the source rate
  bool secure = false;              // QBER under threshold and rate > 0
};

// QBER security threshold for these protocols (strict comparison).
inline constexpr double kQberThreshold = 0.11;
bool threshold_check(double qber);

// H2 with the continuity convention H2(0) = H2(1) = 0.
double binary_entropy(double x);

// Channel transmission from a ledger total: 10^(-loss/10) * detector eff.
double channel_eta(double loss_db, double detector_efficiency);

// Overall signal gain Q_mu = Y0 + 1 - exp(-eta mu).
double decoy_gain_qmu(double eta, double mu, double y0);

// E_mu = (Y0/2 + e_det (1 - e^(-eta mu))) / Q_mu, in (0, 1/2].
double qber_decoy(const DecoyParams& params, double loss_db);

// Finite-key deduction, in bits:
//   Delta = 2 log2(1 / (2 (eps - eps_bar - eps_EC)))
//         + 7 sqrt(N log2(2 / (eps_bar - eps_bar')))
// (standard form; the dominant term grows like sqrt(N)).
double security_delta(const DecoyParams& params);

// Vacuum+weak-decoy single-photon estimates (Q1 lower, E1 upper bound).
struct DecoySinglePhotonBounds {
  double y1;
  double q1;
  double e1;
};
DecoySinglePhotonBounds decoy_single_photon_bounds(const DecoyParams& params, double eta);

// K = q * Nmu/(Nmu+Nnu) * [ -Qmu f H2(Emu) + Q1 (1 - H2(E1) - Qmu Delta/Nmu) ]
// clamped at zero.
KeyRateResult keyrate_decoy(const DecoyParams& params, double loss_db);

// BBM92: K = 1/2 Qlambda [1 - H2(E) - f H2(E)], clamped at zero.
KeyRateResult keyrate_bbm92(const EntangledParams& params);

struct DetectorFit {
  double dark_count_y0 = 0.0;
  double detector_error = 0.0;
  std::vector<double> residuals;  // fitted minus observed QBER, per point
  double max_abs_residual = 0.0;
};

// Least-squares (Y0, e_det) over (loss_dB, QBER) observations under the
// decoy QBER model. Needs at least two points with distinct losses.
DetectorFit fit_detector_params(std::span<const std::pair<double, double>> points,
                                double mu = 0.5, double detector_efficiency = 1.0);

}  // namespace qlink
