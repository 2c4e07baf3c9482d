// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "qlink/link_budget.hpp"
#include "qlink/orbit_doppler.hpp"
#include "qlink/qkd_rates.hpp"

namespace qlink {

// Entangled-source working point: the QBER ships as a site-measured constant
// and the coincidence gain follows the channel, Q_lambda = kappa * 10^(-L/10)
// (kappa absorbs the local-arm heralding and detection efficiency).
struct EntangledScenario {
  double pair_rate_hz = 10e6;
  double qber = 0.0;
  double coincidence_efficiency = 0.0;  // kappa
  double ec_efficiency_f = 1.22;
};

EntangledParams make_entangled_params(const EntangledScenario& sc, double loss_db);

struct ScenarioFile {
  std::string name;
  LinkScenario link;
  std::optional<DecoyParams> decoy;
  std::optional<EntangledScenario> entangled;
  std::optional<PassParameters> pass;
  std::optional<double> working_r0_m;  // aperture-sweep coherence length
  std::optional<std::string> output_format;  // table|csv|json preference
};

class SiteDatabase {
 public:
  static SiteDatabase load(const std::filesystem::path& path);

  const SiteProfile& get(const std::string& name) const;  // throws on unknown site
  const std::map<std::string, SiteProfile>& sites() const { return sites_; }

 private:
  std::map<std::string, SiteProfile> sites_;
};

// Loads and fully validates one scenario file; every violation is reported,
// not just the first. Referenced sites must exist in the database.
ScenarioFile load_scenario(const std::filesystem::path& path, const SiteDatabase& sites);

// `wavelength_nm,transmittance` CSV with a header row, '.' decimals.
TransmittanceTable load_transmittance_csv(const std::filesystem::path& path);

}  // namespace qlink
