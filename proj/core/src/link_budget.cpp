// SPDX-License-Identifier: Apache-2.0
#include "qlink/link_budget.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "qlink/bessel.hpp"
#include "qlink/units.hpp"

namespace qlink {

void OpticalTerminal::validate(const std::string& label) const {
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(label + " terminal: " + msg);
  };
  if (aperture_m < 0.0) fail("aperture < 0");
  if (secondary_radius_m < 0.0) fail("secondary radius < 0");
  if (aperture_m > 0.0 && secondary_radius_m >= primary_radius_m())
    fail("secondary radius must be smaller than the primary radius");
  if (!(optics_efficiency > 0.0 && optics_efficiency <= 1.0))
    fail("optics efficiency outside (0, 1]");
  if (pointing_offset_rad < 0.0) fail("pointing offset < 0");
  if (half_divergence_rad < 0.0) fail("divergence < 0");
  if (beam_waist_m < 0.0) fail("beam waist < 0");
}

void LinkScenario::validate() const {
  transmitter.validate("transmitter");
  receiver.validate("receiver");
  if (!(wavelength_nm > 0.0)) throw std::invalid_argument("scenario: wavelength <= 0");
  if (!(range_m > 0.0)) throw std::invalid_argument("scenario: range <= 0");
  if (!(zenith_rad >= 0.0 && zenith_rad < kPi / 2.0))
    throw std::invalid_argument("scenario: zenith must lie in [0, 90 deg)");
  if (!(tx_power_w > 0.0)) throw std::invalid_argument("scenario: tx power <= 0");
  if (ledger_recipe.empty()) throw std::invalid_argument("scenario: empty ledger recipe");
  if (beam_wander_db < 0.0) throw std::invalid_argument("scenario: beam wander dB < 0");
}

const char* ledger_row_name(LedgerRowKind kind) {
  switch (kind) {
    case LedgerRowKind::kTxGain: return "tx_gain";
    case LedgerRowKind::kTxOptics: return "tx_optics";
    case LedgerRowKind::kPathLoss: return "path_loss";
    case LedgerRowKind::kAtmAttenuation: return "atm_attenuation";
    case LedgerRowKind::kTurbulence: return "turbulence";
    case LedgerRowKind::kBeamWander: return "beam_wander";
    case LedgerRowKind::kGeometricCollection: return "geometric_collection";
    case LedgerRowKind::kRxGain: return "rx_gain";
    case LedgerRowKind::kRxOptics: return "rx_optics";
    case LedgerRowKind::kRxPointing: return "rx_pointing";
  }
  return "?";
}

double transmitter_gain_db(double theta_b_half_rad) {
  if (!(theta_b_half_rad > 0.0)) throw std::invalid_argument("transmitter_gain: divergence <= 0");
  return to_db(8.0 / (theta_b_half_rad * theta_b_half_rad));
}

double obscuration_efficiency(double alpha, double gamma) {
  if (!(alpha > 0.0)) throw std::invalid_argument("obscuration_efficiency: alpha <= 0");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("obscuration_efficiency: gamma outside [0, 1)");
  const double a2 = alpha * alpha;
  const double d = std::exp(-a2) - std::exp(-a2 * gamma * gamma);
  return 2.0 / a2 * d * d;
}

double receiver_gain_db(double aperture_m, double wavelength_nm, ReceiverGainMode mode,
                        double alpha, double gamma) {
  if (!(aperture_m > 0.0)) throw std::invalid_argument("receiver_gain: aperture <= 0");
  if (!(wavelength_nm > 0.0)) throw std::invalid_argument("receiver_gain: wavelength <= 0");
  const double lam = nm_to_m(wavelength_nm);
  const double area = kPi * aperture_m * aperture_m / 4.0;
  double gain = 4.0 * kPi * area / (lam * lam);
  if (mode == ReceiverGainMode::kObscured) gain *= obscuration_efficiency(alpha, gamma);
  return to_db(gain);
}

double free_space_path_loss_db(double wavelength_nm, double range_m) {
  if (!(wavelength_nm > 0.0) || !(range_m > 0.0))
    throw std::invalid_argument("free_space_path_loss: arguments must be positive");
  const double r = nm_to_m(wavelength_nm) / (4.0 * kPi * range_m);
  return to_db(r * r);
}

double pointing_loss_db(double offset_rad, double aperture_m, double wavelength_nm) {
  if (offset_rad < 0.0) throw std::invalid_argument("pointing_loss: offset < 0");
  if (!(aperture_m > 0.0) || !(wavelength_nm > 0.0))
    throw std::invalid_argument("pointing_loss: aperture and wavelength must be positive");
  const double p = kPi * (aperture_m / nm_to_m(wavelength_nm)) * offset_rad;
  if (p == 0.0) return 0.0;  // J1(p)/p -> 1/2
  const double a = bessel_j1(p) / p;
  return to_db(4.0 * a * a);
}

namespace {

struct RowValue {
  double db;
  std::string provenance;
};

// Every recipe row in one place so the dB ledger and the linear power chain
// cannot drift apart.
RowValue compute_row(LedgerRowKind kind, const LinkScenario& sc) {
  const double sec = 1.0 / std::cos(sc.zenith_rad);
  switch (kind) {
    case LedgerRowKind::kTxGain:
      if (!(sc.transmitter.half_divergence_rad > 0.0))
        throw std::invalid_argument("ledger: tx_gain row needs a transmitter divergence");
      return {transmitter_gain_db(sc.transmitter.half_divergence_rad), "Gt = 8/Theta_B^2"};
    case LedgerRowKind::kTxOptics:
      return {to_db(sc.transmitter.optics_efficiency), "terminal datum"};
    case LedgerRowKind::kPathLoss:
      return {free_space_path_loss_db(sc.wavelength_nm, sc.range_m),
              "Lr = (lambda/4 pi L)^2"};
    case LedgerRowKind::kAtmAttenuation: {
      if (sc.direction == LinkDirection::kHorizontal) {
        auto it = sc.site.extinction_per_m.find(sc.wavelength_nm);
        if (it == sc.site.extinction_per_m.end())
          throw std::invalid_argument("ledger: site '" + sc.site.name +
                                      "' has no extinction coefficient at this wavelength");
        return {to_db(horizontal_transmittance({it->second, sc.range_m})),
                "Beer-Lambert from site extinction"};
      }
      const double eta = zenith_transmittance(sc.site.transmittance, sc.wavelength_nm);
      return {to_db(slant_transmittance(eta, sc.zenith_rad)), "site table as eta^sec(zenith)"};
    }
    case LedgerRowKind::kTurbulence: {
      if (auto it = sc.site.turbulence_eta.find(sc.wavelength_nm);
          it != sc.site.turbulence_eta.end())
        return {to_db(it->second) * sec, "site eta_tur"};
      BeamGeometry geom{sc.transmitter.beam_waist_m, sc.wavelength_nm, sc.range_m,
                        sc.zenith_rad, sc.site.altitude_m};
      return {-turbulence_loss_db(geom, sc.site, sc.wavelength_nm), "Strehl ratio at D/r0"};
    }
    case LedgerRowKind::kBeamWander:
      return {-sc.beam_wander_db * sec * sec * sec, "scenario datum with sec^3 zenith scaling"};
    case LedgerRowKind::kGeometricCollection: {
      if (!(sc.transmitter.half_divergence_rad > 0.0))
        throw std::invalid_argument("ledger: geometric_collection row needs a divergence");
      const double we = sc.transmitter.half_divergence_rad * sc.range_m;
      const double rr = sc.receiver.primary_radius_m();
      const double captured = -std::expm1(-2.0 * rr * rr / (we * we));
      return {to_db(captured), "truncated Gaussian on receiver aperture"};
    }
    case LedgerRowKind::kRxGain:
      return {receiver_gain_db(sc.receiver.aperture_m, sc.wavelength_nm, sc.receiver_gain_mode,
                               sc.receiver.beam_waist_m > 0.0 ? sc.receiver.alpha() : 0.0,
                               sc.receiver.beam_waist_m > 0.0 ? sc.receiver.gamma() : 0.0),
              sc.receiver_gain_mode == ReceiverGainMode::kPlain ? "Gr = 4 pi A/lambda^2"
                                                                : "Gr with obscuration factor"};
    case LedgerRowKind::kRxOptics:
      return {to_db(sc.receiver.optics_efficiency), "terminal datum"};
    case LedgerRowKind::kRxPointing:
      return {pointing_loss_db(sc.receiver.pointing_offset_rad, sc.receiver.aperture_m,
                               sc.wavelength_nm),
              "lp = 4[J1(p)/p]^2"};
  }
  throw std::logic_error("ledger: unhandled row kind");
}

std::string row_label(LedgerRowKind kind) {
  switch (kind) {
    case LedgerRowKind::kTxGain: return "Tx gain (Gt)";
    case LedgerRowKind::kTxOptics: return "Tx optics loss (eta_t)";
    case LedgerRowKind::kPathLoss: return "Path loss (Lr)";
    case LedgerRowKind::kAtmAttenuation: return "Atmospheric attenuation (eta_atm)";
    case LedgerRowKind::kTurbulence: return "Turbulence (eta_tur)";
    case LedgerRowKind::kBeamWander: return "Beam wander loss (L_BW)";
    case LedgerRowKind::kGeometricCollection: return "Geometric capture";
    case LedgerRowKind::kRxGain: return "RX gain (Gr)";
    case LedgerRowKind::kRxOptics: return "RX optics loss (eta_r)";
    case LedgerRowKind::kRxPointing: return "RX pointing loss";
  }
  return "?";
}

void reject_duplicates(const std::vector<LedgerRowKind>& recipe) {
  std::set<LedgerRowKind> seen;
  for (auto kind : recipe)
    if (!seen.insert(kind).second)
      throw std::invalid_argument(std::string("ledger recipe: duplicate row '") +
                                  ledger_row_name(kind) + "'");
}

}  // namespace

double LossLedger::recompute_total() const {
  double sum = 0.0;
  for (const auto& row : rows) sum += row.value_db;
  return -sum;
}

LossLedger assemble_ledger(const LinkScenario& scenario) {
  scenario.validate();
  reject_duplicates(scenario.ledger_recipe);
  LossLedger ledger;
  ledger.rows.reserve(scenario.ledger_recipe.size());
  for (auto kind : scenario.ledger_recipe) {
    RowValue v = compute_row(kind, scenario);
    ledger.rows.push_back({row_label(kind), v.db, std::move(v.provenance)});
  }
  ledger.total_loss_db = ledger.recompute_total();
  return ledger;
}

double received_power_mean(const LinkScenario& scenario) {
  scenario.validate();
  reject_duplicates(scenario.ledger_recipe);
  double power = scenario.tx_power_w;
  for (auto kind : scenario.ledger_recipe) power *= from_db(compute_row(kind, scenario).db);
  return power;
}

FadingSampler::FadingSampler(double p0_w, double beta, double sigma_l2, std::uint64_t seed)
    : p0_w_(p0_w), beta_(beta), sigma_l_(std::sqrt(sigma_l2)), rng_(seed) {
  if (!(p0_w > 0.0)) throw std::invalid_argument("FadingSampler: p0 <= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("FadingSampler: beta <= 0");
  if (sigma_l2 < 0.0) throw std::invalid_argument("FadingSampler: sigma_l^2 < 0");
}

double FadingSampler::uniform() {
  // 53-bit mantissa in (0, 1); zero rejected so logs and powers stay finite.
  for (;;) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

ReceivedPowerSample FadingSampler::next() {
  // Inverse-CDF draw for p(I) = beta I^(beta-1) on [0, 1].
  const double i = std::pow(uniform(), 1.0 / beta_);
  double s = 1.0;
  if (sigma_l_ > 0.0) {
    double z;
    if (have_spare_) {
      z = spare_;
      have_spare_ = false;
    } else {
      const double u1 = uniform();
      const double u2 = uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      z = r * std::cos(2.0 * kPi * u2);
      spare_ = r * std::sin(2.0 * kPi * u2);
      have_spare_ = true;
    }
    // Unit-mean convention: log-mean = -sigma_l^2 / 2.
    s = std::exp(-0.5 * sigma_l_ * sigma_l_ + sigma_l_ * z);
  }
  return {p0_w_, i, s, p0_w_ * i * s};
}

std::vector<ReceivedPowerSample> sample_received_power(const LinkScenario& scenario, double beta,
                                                       double sigma_l2, std::uint64_t seed,
                                                       std::size_t count) {
  FadingSampler sampler(received_power_mean(scenario), beta, sigma_l2, seed);
  std::vector<ReceivedPowerSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

TurbulenceDiagnostics link_turbulence_diagnostics(const LinkScenario& scenario) {
  scenario.validate();
  BeamGeometry geom{scenario.transmitter.beam_waist_m, scenario.wavelength_nm, scenario.range_m,
                    scenario.zenith_rad, scenario.site.altitude_m};
  const double theta_b = scenario.transmitter.half_divergence_rad > 0.0
                             ? scenario.transmitter.half_divergence_rad
                             : geom.half_divergence_rad();
  return turbulence_diagnostics(geom, scenario.site, theta_b);
}

}  // namespace qlink
