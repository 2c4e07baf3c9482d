// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "qlink/turbulence.hpp"

namespace qlink {

struct ApertureSweepRow {
  double diameter_m;
  double beam_wander_loss_db;  // non-increasing in D
  double turbulence_loss_db;   // non-decreasing in D
  double total_db;             // sum of the two
};

// Aperture-dependent losses for each candidate transmit diameter (the beam
// fills the aperture, W0 = D/2). Wander loss is referenced against the
// turbulence-limited divergence 2 lambda / (pi r0): the far-field cone the
// channel coherence enforces no matter how large the optic. Turbulence loss
// is the Strehl ratio at D/r0. `working_r0_m` pins the coherence length for
// the whole sweep; pass 0 to derive it from the site profile at the
// template's wavelength and zenith. Diameters are sorted internally.
std::vector<ApertureSweepRow> sweep_aperture(const BeamGeometry& geom_template,
                                             const SiteProfile& site,
                                             std::vector<double> diameters_m,
                                             double working_r0_m = 0.0);

struct OptimalAperture {
  double diameter_m;
  bool interior;  // false when the best total sits on the sweep boundary
};

// Argmin of total loss; ties resolve toward the smaller diameter. A
// non-interior minimum is flagged (the sweep range is probably too narrow).
OptimalAperture optimal_aperture(std::span<const ApertureSweepRow> rows);

enum class DOverR0Regime {
  kWanderRegime,  // < 1: centroid wander dominates
  kSafe,          // 1..2
  kDegrading,     // > 2: higher-order wavefront distortion accumulates fast
};

DOverR0Regime d_over_r0_guidance(double d_over_r0);

}  // namespace qlink
