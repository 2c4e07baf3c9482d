// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qlink/atmosphere.hpp"
#include "qlink/turbulence.hpp"

namespace qlink {

// Cassegrain terminal. `beam_waist_m` is the Gaussian 1/e^2 radius at the
// aperture plane (feeds the obscuration factor and wander statistics);
// `half_divergence_rad` is the engineered far-field half angle, which may sit
// above the diffraction limit when expanding optics set it.
struct OpticalTerminal {
  double aperture_m = 0.0;           // D = 2R
  double secondary_radius_m = 0.0;   // b, 0 <= b < R
  double beam_waist_m = 0.0;         // omega
  double optics_efficiency = 1.0;    // eta in (0, 1]
  double pointing_offset_rad = 0.0;  // theta
  double half_divergence_rad = 0.0;  // Theta_B (half angle)

  double primary_radius_m() const { return 0.5 * aperture_m; }
  double alpha() const { return primary_radius_m() / beam_waist_m; }  // R / omega
  double gamma() const { return secondary_radius_m / primary_radius_m(); }
  void validate(const std::string& label) const;
};

enum class LinkDirection { kUplink, kDownlink, kHorizontal };
enum class ReceiverGainMode { kPlain, kObscured };

// One named dB contribution of a loss ledger. Rows are signed the way link
// budget tables print them: gains positive, losses negative.
enum class LedgerRowKind {
  kTxGain,
  kTxOptics,
  kPathLoss,
  kAtmAttenuation,
  kTurbulence,
  kBeamWander,
  kGeometricCollection,  // horizontal validation links: truncated-Gaussian capture
  kRxGain,
  kRxOptics,
  kRxPointing,
};

const char* ledger_row_name(LedgerRowKind kind);

struct LinkScenario {
  std::string name;
  OpticalTerminal transmitter;
  OpticalTerminal receiver;
  double wavelength_nm = 0.0;
  double range_m = 0.0;  // slant range at `zenith_rad`
  double zenith_rad = 0.0;
  LinkDirection direction = LinkDirection::kUplink;
  SiteProfile site;
  double tx_power_w = 1.0;
  ReceiverGainMode receiver_gain_mode = ReceiverGainMode::kPlain;
  std::vector<LedgerRowKind> ledger_recipe;
  // Zenith-referenced beam-wander row value (scaled by sec^3 off zenith).
  double beam_wander_db = 0.0;

  void validate() const;
};

struct LedgerEntry {
  std::string label;
  double value_db;  // signed: gains > 0, losses < 0
  std::string provenance;
};

struct LossLedger {
  std::vector<LedgerEntry> rows;
  double total_loss_db = 0.0;  // -(sum of signed rows)

  // Re-derives the total from the rows in order; bit-identical to the stored
  // total for any ledger produced by assemble_ledger.
  double recompute_total() const;
};

// Gt = 8 / Theta_B^2 in dB (Theta_B is the half angle).
double transmitter_gain_db(double theta_b_half_rad);

// Telescope transmission past the secondary: (2/a^2)(e^{-a^2} - e^{-a^2 g^2})^2.
double obscuration_efficiency(double alpha, double gamma);

// Plain: 4 pi A / lambda^2. Obscured: plain times the obscuration factor.
double receiver_gain_db(double aperture_m, double wavelength_nm,
                        ReceiverGainMode mode = ReceiverGainMode::kPlain, double alpha = 0.0,
                        double gamma = 0.0);

// (lambda / 4 pi L)^2 in dB.
double free_space_path_loss_db(double wavelength_nm, double range_m);

// 4 [J1(p)/p]^2 with p = pi (D/lambda) theta, 0 dB on axis, floored at the
// dB sentinel past the first Bessel zero.
double pointing_loss_db(double offset_rad, double aperture_m, double wavelength_nm);

// Ordered dB ledger following the scenario recipe. Duplicate row kinds are
// rejected. Zenith dependence: attenuation row uses eta^sec(theta),
// turbulence-override rows scale their dB by sec(theta), the beam-wander row
// by sec^3(theta).
LossLedger assemble_ledger(const LinkScenario& scenario);

// Mean received power Pt * product of the linear factors of the same recipe.
double received_power_mean(const LinkScenario& scenario);

struct ReceivedPowerSample {
  double p0_w;
  double fading_i;  // beta-distributed pointing fade, in [0, 1]
  double fading_s;  // unit-mean lognormal scintillation fade, > 0
  double pr_w;      // p0 * I * S
};

// Draws of Pr = P0 I S with I ~ beta I^(beta-1) on [0,1] and ln S ~
// N(-sigma_l^2/2, sigma_l^2) (unit mean). The generator state is explicit so
// parallel runs are reproducible.
class FadingSampler {
 public:
  FadingSampler(double p0_w, double beta, double sigma_l2, std::uint64_t seed);
  ReceivedPowerSample next();

 private:
  double uniform();  // in (0, 1)

  double p0_w_;
  double beta_;
  double sigma_l_;
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::vector<ReceivedPowerSample> sample_received_power(const LinkScenario& scenario, double beta,
                                                       double sigma_l2, std::uint64_t seed,
                                                       std::size_t count);

// Turbulence statistics for the scenario's transmit beam over its site.
TurbulenceDiagnostics link_turbulence_diagnostics(const LinkScenario& scenario);

}  // namespace qlink
