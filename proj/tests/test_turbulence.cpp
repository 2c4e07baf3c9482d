// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <algorithm>

#include "oracles.hpp"
#include "qlink/turbulence.hpp"
#include "qlink/units.hpp"

using namespace qlink;

namespace {
const HufnagelValleyProfile kHv{};
const BeamGeometry kHanleBeam{0.075, 810.0, 5e5, 0.0, 4500.0};
}  // namespace

TEST_CASE("vacuum beam radius") {
  BeamGeometry g = kHanleBeam;
  g.range_m = 1e-6;  // L -> 0 collapses to the waist
  CHECK(vacuum_beam_radius(g) == doctest::Approx(g.waist_m).epsilon(1e-9));
  // far field approaches the diffraction cone
  g.range_m = 1e9;
  CHECK(vacuum_beam_radius(g) ==
        doctest::Approx(g.half_divergence_rad() * g.range_m).epsilon(1e-4));
  // direct re-evaluation at the working point
  const double k = 2.0 * kPi / 810e-9;
  const double q = 2.0 * 5e5 / (k * 0.075 * 0.075);
  CHECK(vacuum_beam_radius(kHanleBeam) ==
        doctest::Approx(0.075 * std::sqrt(1.0 + q * q)).epsilon(1e-12));
}

TEST_CASE("beam spread factor against a fine fixed grid") {
  const double t = beam_spread_factor(kHanleBeam, kHv);
  const double k = kHanleBeam.wavenumber_per_m();
  const double w = vacuum_beam_radius(kHanleBeam);
  const double chi = 2.0 * kHanleBeam.range_m / (k * w * w);
  const double moment = oracle::fixed_simpson(
      [&](double h) {
        return oracle::cn2_hv_reference(h, 1.7e-14, 21.0) *
               std::pow(1.0 - h / kHanleBeam.range_m, 5.0 / 3.0);
      },
      0.0, 30e3, 240000);
  const double expected = 4.35 * std::pow(chi, 5.0 / 6.0) * std::pow(k, 7.0 / 6.0) *
                          std::pow(kHanleBeam.range_m, 5.0 / 6.0) * moment;
  CHECK(t == doctest::Approx(expected).epsilon(1e-6));
  // zenith prefactor: sec^(11/6); integral re-evaluated at same limits
  BeamGeometry g60 = kHanleBeam;
  g60.zenith_rad = deg_to_rad(60.0);
  CHECK(beam_spread_factor(g60, kHv) ==
        doctest::Approx(t * std::pow(2.0, 11.0 / 6.0)).epsilon(1e-9));
}

TEST_CASE("effective waist and on-axis intensity") {
  CHECK(effective_waist(2.0, 0.0) == 2.0);
  CHECK(effective_waist(2.0, 3.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(mean_onaxis_intensity(2.0, 2.0) == 1.0);
  CHECK(mean_onaxis_intensity(2.0, 4.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(to_db(mean_onaxis_intensity(2.0, 4.0)) == doctest::Approx(-6.0206).epsilon(1e-4));
  CHECK_THROWS_AS(mean_onaxis_intensity(2.0, 1.0), std::invalid_argument);
  // We >= W for any spread factor
  for (double t : {0.0, 0.3, 4.36, 1601.0}) CHECK(effective_waist(1.3, t) >= 1.3);
}

TEST_CASE("jitter variance coefficients") {
  const double lam = 810.0, d = 0.15;
  const double main_text = jitter_variance(1.0, lam, d, JitterCoefficient::kMainText);
  const double ratio = nm_to_m(lam) / d;
  CHECK(main_text == doctest::Approx(0.182 * ratio * ratio).epsilon(1e-12));
  const double appendix = jitter_variance(1.0, lam, d, JitterCoefficient::kAppendix);
  CHECK(appendix / main_text == doctest::Approx(0.36 / 0.182).epsilon(1e-12));
  // direct re-evaluation: D = 0.15 m, r0 = 0.16 m
  const double dr = 0.15 / 0.16;
  CHECK(jitter_variance(dr, 810.0, 0.15) ==
        doctest::Approx(0.182 * std::pow(dr, 5.0 / 3.0) * std::pow(810e-9 / 0.15, 2.0))
            .epsilon(1e-12));
}

TEST_CASE("beta fading parameter and Monte Carlo mean") {
  const double theta_b = 10e-6;
  CHECK(beta_parameter(theta_b, std::pow(theta_b / 2.0, 2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta_mean_fading(1.0) == doctest::Approx(0.5));
  CHECK(beta_mean_fading(1e12) == doctest::Approx(1.0).epsilon(1e-9));

  // sample mean of I = U^(1/beta) is beta/(beta+1) within 3 sigma at 1e6
  const double beta = 3.7;
  std::mt19937_64 rng(42);
  const std::size_t n = 1'000'000;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (rng() >> 11) * 0x1.0p-53;
    sum += std::pow(u, 1.0 / beta);
  }
  const double mean = sum / n;
  const double var_i = beta / (beta + 2.0) - std::pow(beta / (beta + 1.0), 2.0);
  CHECK(std::fabs(mean - beta / (beta + 1.0)) < 3.0 * std::sqrt(var_i / n));
}

TEST_CASE("rytov variance and scintillation index") {
  const double sl2 = rytov_log_variance(kHanleBeam, kHv);
  const double moment = oracle::fixed_simpson(
      [&](double h) {
        return oracle::cn2_hv_reference(h, 1.7e-14, 21.0) * std::pow(h, 5.0 / 6.0);
      },
      0.0, 30e3, 240000);
  const double k = kHanleBeam.wavenumber_per_m();
  CHECK(sl2 == doctest::Approx(2.24 * std::pow(k, 7.0 / 6.0) * moment).epsilon(1e-6));
  CHECK(scintillation_index(sl2) == doctest::Approx(std::expm1(sl2)).epsilon(1e-12));
  CHECK(scintillation_index(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(scintillation_index(0.0) == 0.0);
}

TEST_CASE("strehl ratio") {
  CHECK(strehl_ratio(0.0) == 1.0);
  CHECK(strehl_ratio(1.0) == doctest::Approx(std::pow(2.0, -1.2)).epsilon(1e-12));
  CHECK(-to_db(strehl_ratio(1.0)) == doctest::Approx(3.6124).epsilon(1e-4));
  double prev = 1.0;
  for (double d : {0.5, 1.0, 2.0, 4.0}) {
    const double s = strehl_ratio(d);
    CHECK(s < prev);
    CHECK(s > 0.0);
    prev = s;
  }
}

TEST_CASE("beam wander") {
  // direct arithmetic working point: W0 7.5 cm, 810 nm, 500 km, r0 16 cm
  const double rc = beam_wander_rms(kHanleBeam, 0.16);
  CHECK(rc == doctest::Approx(1.8677956).epsilon(1e-6));
  CHECK(beam_wander_angle(kHanleBeam, 0.16) == doctest::Approx(3.7355913e-6).epsilon(1e-6));
  // sec(zenith) factor
  BeamGeometry g60 = kHanleBeam;
  g60.zenith_rad = deg_to_rad(60.0);
  CHECK(beam_wander_rms(g60, 0.16) == doctest::Approx(2.0 * rc).epsilon(1e-12));
  // vanishes as coherence grows
  CHECK(beam_wander_rms(kHanleBeam, 1e9) < 1e-6);

  CHECK(beam_wander_loss_db(0.0, 10e-6) == 0.0);
  CHECK(beam_wander_loss_db(10e-6, 10e-6) == doctest::Approx(8.6858896).epsilon(1e-6));
  // decreasing in the reference divergence
  CHECK(beam_wander_loss_db(3e-6, 20e-6) < beam_wander_loss_db(3e-6, 10e-6));
}

TEST_CASE("turbulence loss: override vs Strehl fallback") {
  SiteProfile site;
  site.name = "t";
  site.hv = kHv;
  site.turbulence_eta[532.0] = 0.64;
  site.turbulence_eta[1550.0] = 0.96;
  BeamGeometry g = kHanleBeam;
  CHECK(turbulence_loss_db(g, site, 532.0) == doctest::Approx(1.9382003).epsilon(1e-6));
  CHECK(turbulence_loss_db(g, site, 1550.0) == doctest::Approx(0.1772877).epsilon(1e-6));
  // no override at 810: Strehl at D/r0 from the profile
  const double r0 = fried_parameter(site.hv, 810.0, 0.0);
  CHECK(turbulence_loss_db(g, site, 810.0) ==
        doctest::Approx(-to_db(strehl_ratio(0.15 / r0))).epsilon(1e-9));
  // Strehl = 1 when the beam is tiny against r0
  BeamGeometry tiny = g;
  tiny.waist_m = 1e-9;
  CHECK(turbulence_loss_db(tiny, site, 810.0) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("diagnostics bundle is self-consistent") {
  SiteProfile site;
  site.name = "t";
  site.hv = kHv;
  const auto d = turbulence_diagnostics(kHanleBeam, site, 10e-6);
  CHECK(d.effective_waist_m ==
        doctest::Approx(d.vacuum_radius_m * std::sqrt(1.0 + d.spread_factor)).epsilon(1e-12));
  CHECK(d.scintillation_index == doctest::Approx(std::expm1(d.rytov_log_variance)).epsilon(1e-12));
  CHECK(d.d_over_r0 == doctest::Approx(0.15 / d.fried_r0_m).epsilon(1e-12));
  CHECK(d.wander_angle_rad == doctest::Approx(d.wander_rms_m / 5e5).epsilon(1e-12));
  CHECK(d.effective_waist_m >= d.vacuum_radius_m);
}

TEST_CASE("property: strehl ratio and beta mean are monotone") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ratio(0.0, 8.0);
  std::uniform_real_distribution<double> beta(1e-3, 1e3);
  for (int trial = 0; trial < 2000; ++trial) {
    double a = ratio(rng), b = ratio(rng);
    if (a > b) std::swap(a, b);
    CHECK(strehl_ratio(a) >= strehl_ratio(b));
    CHECK(strehl_ratio(a) <= 1.0);
    CHECK(strehl_ratio(b) > 0.0);
    double p = beta(rng), q = beta(rng);
    if (p > q) std::swap(p, q);
    CHECK(beta_mean_fading(p) <= beta_mean_fading(q));
    CHECK(beta_mean_fading(q) < 1.0);
  }
}
