// SPDX-License-Identifier: Apache-2.0
#include "qlink/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qlink/config.hpp"
#include "qlink/units.hpp"

namespace qlink {

EntangledParams make_entangled_params(const EntangledScenario& sc, double loss_db) {
  EntangledParams p;
  p.pair_rate_hz = sc.pair_rate_hz;
  p.qber_e = sc.qber;
  p.signal_gain_q_lambda = sc.coincidence_efficiency * from_db(-loss_db);
  p.ec_efficiency_f = sc.ec_efficiency_f;
  return p;
}

TransmittanceTable load_transmittance_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{path.string(), 0, 0, "cannot open file"}});
  IssueCollector issues(path.string());
  TransmittanceTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "wavelength_nm,transmittance")
        issues.add(1, "expected header 'wavelength_nm,transmittance'");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      issues.add(line_no, "expected 'wavelength_nm,transmittance'");
      continue;
    }
    const auto wl = parse_number(std::string_view(line).substr(0, comma));
    const auto tr = parse_number(std::string_view(line).substr(comma + 1));
    if (!wl || !tr) {
      issues.add(line_no, "malformed numeric row");
      continue;
    }
    table.entries.push_back({*wl, *tr});
  }
  issues.throw_if_any();
  std::sort(table.entries.begin(), table.entries.end(),
            [](const auto& a, const auto& b) { return a.wavelength_nm < b.wavelength_nm; });
  table.validate();
  return table;
}

namespace {

SiteProfile read_site(const ConfigSection& section, const std::filesystem::path& base_dir,
                      IssueCollector& issues) {
  SectionReader r(section, issues);
  SiteProfile site;
  site.name = section.name;
  site.altitude_m = r.require_number("altitude_m", 0.0, 9e3).value_or(0.0);
  site.hv.ground_turbulence_a0 = r.number_or("hv_a0", 1.7e-14);
  site.hv.wind_rms = r.number_or("hv_wind_ms", 21.0);
  site.provenance = r.require_string("provenance").value_or("");

  if (auto csv = r.get_string("transmittance_csv")) {
    try {
      site.transmittance = load_transmittance_csv(base_dir / *csv);
    } catch (const ConfigError& err) {
      issues.add(section.line, "site '" + site.name + "': " + err.what());
    }
  }
  for (const auto& [wl, eta] : r.numbers_by_wavelength("transmittance_")) {
    if (!(eta > 0.0 && eta <= 1.0)) {
      std::ostringstream oss;
      oss << "site '" << site.name << "': transmittance at " << wl << " nm outside (0, 1]";
      issues.add(section.line, oss.str());
      continue;
    }
    auto& es = site.transmittance.entries;
    const auto it = std::find_if(es.begin(), es.end(),
                                 [wl = wl](const auto& e) { return e.wavelength_nm == wl; });
    if (it != es.end())
      it->transmittance = eta;  // explicit band value wins over a CSV sample
    else
      es.push_back({wl, eta});
  }
  std::sort(site.transmittance.entries.begin(), site.transmittance.entries.end(),
            [](const auto& a, const auto& b) { return a.wavelength_nm < b.wavelength_nm; });

  for (const auto& [wl, eta] : r.numbers_by_wavelength("turbulence_eta_")) {
    if (!(eta > 0.0 && eta <= 1.0)) {
      std::ostringstream oss;
      oss << "site '" << site.name << "': turbulence_eta at " << wl << " nm outside (0, 1]";
      issues.add(section.line, oss.str());
      continue;
    }
    site.turbulence_eta[wl] = eta;
  }
  for (const auto& [wl, beta] : r.numbers_by_wavelength("beta_ext_")) {
    if (beta < 0.0) {
      std::ostringstream oss;
      oss << "site '" << site.name << "': beta_ext at " << wl << " nm is negative";
      issues.add(section.line, oss.str());
      continue;
    }
    site.extinction_per_m[wl] = beta;
  }
  if (auto seeing = r.get_number("seeing_arcsec")) site.seeing_arcsec = *seeing;
  if (auto r0 = r.get_number("fried_r0_500nm_m")) site.fried_r0_500nm_m = *r0;

  r.finish({"transmittance_csv", "seeing_arcsec", "fried_r0_500nm_m", "hv_a0", "hv_wind_ms"});
  return site;
}

OpticalTerminal read_terminal(const Config& cfg, const std::string& section_name,
                              IssueCollector& issues) {
  OpticalTerminal t;
  const auto* section = cfg.find(section_name);
  if (section == nullptr) {
    issues.add(0, "missing [" + section_name + "] section");
    return t;
  }
  SectionReader r(*section, issues);
  t.aperture_m = r.number_or("aperture_m", 0.0);
  t.secondary_radius_m = r.number_or("secondary_radius_m", 0.0);
  t.beam_waist_m = r.number_or("beam_waist_m", 0.5 * t.aperture_m);
  t.optics_efficiency = from_db(-r.number_or("optics_loss_db", 0.0));
  t.pointing_offset_rad = r.number_or("pointing_offset_urad", 0.0) * 1e-6;
  t.half_divergence_rad = r.number_or("half_divergence_urad", 0.0) * 1e-6;
  r.finish();
  return t;
}

std::optional<LedgerRowKind> row_kind_from_name(std::string_view name) {
  static constexpr std::pair<std::string_view, LedgerRowKind> kNames[] = {
      {"tx_gain", LedgerRowKind::kTxGain},
      {"tx_optics", LedgerRowKind::kTxOptics},
      {"path_loss", LedgerRowKind::kPathLoss},
      {"atm_attenuation", LedgerRowKind::kAtmAttenuation},
      {"turbulence", LedgerRowKind::kTurbulence},
      {"beam_wander", LedgerRowKind::kBeamWander},
      {"geometric_collection", LedgerRowKind::kGeometricCollection},
      {"rx_gain", LedgerRowKind::kRxGain},
      {"rx_optics", LedgerRowKind::kRxOptics},
      {"rx_pointing", LedgerRowKind::kRxPointing},
  };
  for (const auto& [n, k] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item{text.substr(pos, comma - pos)};
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (!item.empty()) out.push_back(std::move(item));
    pos = comma + 1;
  }
  return out;
}

void read_scenario_section(const Config& cfg, ScenarioFile& out, const SiteDatabase& sites,
                           IssueCollector& issues) {
  const auto* section = cfg.find("scenario");
  if (section == nullptr) {
    issues.add(0, "missing [scenario] section");
    return;
  }
  SectionReader r(*section, issues);
  out.name = r.require_string("name").value_or("");
  out.link.name = out.name;

  if (auto site_name = r.require_string("site")) {
    try {
      out.link.site = sites.get(*site_name);
    } catch (const std::exception& e) {
      issues.add(section->line, e.what());
    }
  }

  out.link.wavelength_nm = r.require_number("wavelength_nm", 1.0, 1e7).value_or(0.0);
  out.link.range_m = r.require_number("range_km", 1e-3, 1e9).value_or(0.0) * 1e3;
  out.link.zenith_rad = deg_to_rad(r.number_or("zenith_deg", 0.0));
  if (!(out.link.zenith_rad >= 0.0 && out.link.zenith_rad < kPi / 2.0))
    issues.add(section->line, "[scenario] zenith_deg outside [0, 90)");
  out.link.tx_power_w = r.number_or("tx_power_w", 1.0);
  out.link.beam_wander_db = r.number_or("beam_wander_db", 0.0);

  if (auto dir = r.require_string("direction")) {
    if (*dir == "uplink")
      out.link.direction = LinkDirection::kUplink;
    else if (*dir == "downlink")
      out.link.direction = LinkDirection::kDownlink;
    else if (*dir == "horizontal")
      out.link.direction = LinkDirection::kHorizontal;
    else
      issues.add(section->line,
                 "[scenario] direction '" + *dir + "' is not uplink|downlink|horizontal");
  }

  if (auto mode = r.get_string("receiver_gain_mode")) {
    if (*mode == "plain")
      out.link.receiver_gain_mode = ReceiverGainMode::kPlain;
    else if (*mode == "obscured")
      out.link.receiver_gain_mode = ReceiverGainMode::kObscured;
    else
      issues.add(section->line, "[scenario] receiver_gain_mode must be plain|obscured");
  }

  if (auto recipe = r.require_string("recipe")) {
    for (const auto& item : split_list(*recipe)) {
      if (auto kind = row_kind_from_name(item))
        out.link.ledger_recipe.push_back(*kind);
      else
        issues.add(section->line, "[scenario] unknown recipe row '" + item + "'");
    }
    if (out.link.ledger_recipe.empty())
      issues.add(section->line, "[scenario] recipe resolves to no rows");
  }

  if (auto r0 = r.get_number("working_r0_m")) out.working_r0_m = *r0;
  if (auto fmt = r.get_string("output_format")) {
    if (*fmt != "table" && *fmt != "csv" && *fmt != "json")
      issues.add(section->line, "[scenario] output_format must be table|csv|json");
    else
      out.output_format = *fmt;
  }
  r.finish({"zenith_deg", "tx_power_w", "beam_wander_db", "receiver_gain_mode", "working_r0_m",
            "output_format"});
}

void read_decoy_section(const Config& cfg, ScenarioFile& out, IssueCollector& issues) {
  const auto* section = cfg.find("decoy");
  if (section == nullptr) return;
  SectionReader r(*section, issues);
  DecoyParams p;
  p.mean_photon_mu = r.number_or("mean_photon_mu", p.mean_photon_mu);
  p.decoy_nu = r.number_or("decoy_nu", p.decoy_nu);
  p.dark_count_y0 = r.require_number("dark_count_y0", 0.0, 1.0).value_or(0.0);
  p.detector_error = r.require_number("detector_error", 0.0, 1.0).value_or(0.0);
  p.detector_efficiency = r.number_or("detector_efficiency", p.detector_efficiency);
  p.basis_factor_q = r.number_or("basis_factor_q", p.basis_factor_q);
  p.ec_efficiency_f = r.number_or("ec_efficiency_f", p.ec_efficiency_f);
  p.source_rate_hz = r.number_or("source_rate_hz", p.source_rate_hz);
  p.signal_counts_n_mu = r.number_or("signal_counts", p.signal_counts_n_mu);
  p.decoy_counts_n_nu = r.number_or("decoy_counts", p.decoy_counts_n_nu);
  p.raw_key_n = r.number_or("raw_key_length", p.raw_key_n);
  p.eps = r.number_or("eps", p.eps);
  p.eps_bar = r.number_or("eps_bar", p.eps_bar);
  p.eps_bar_prime = r.number_or("eps_bar_prime", p.eps_bar_prime);
  p.eps_ec = r.number_or("eps_ec", p.eps_ec);
  r.finish({"mean_photon_mu", "decoy_nu", "detector_efficiency", "basis_factor_q",
            "ec_efficiency_f", "source_rate_hz", "signal_counts", "decoy_counts",
            "raw_key_length", "eps", "eps_bar", "eps_bar_prime", "eps_ec"});
  try {
    p.validate();
  } catch (const std::exception& e) {
    issues.add(section->line, e.what());
  }
  out.decoy = p;
}

void read_entangled_section(const Config& cfg, ScenarioFile& out, IssueCollector& issues) {
  const auto* section = cfg.find("entangled");
  if (section == nullptr) return;
  SectionReader r(*section, issues);
  EntangledScenario p;
  p.pair_rate_hz = r.number_or("pair_rate_hz", p.pair_rate_hz);
  p.qber = r.require_number("qber", 0.0, 0.5).value_or(0.0);
  p.coincidence_efficiency =
      r.require_number("coincidence_efficiency", 0.0, 1.0).value_or(0.0);
  p.ec_efficiency_f = r.number_or("ec_efficiency_f", p.ec_efficiency_f);
  r.finish({"pair_rate_hz", "ec_efficiency_f"});
  out.entangled = p;
}

void read_doppler_section(const Config& cfg, ScenarioFile& out, IssueCollector& issues) {
  const auto* section = cfg.find("doppler");
  if (section == nullptr) return;
  SectionReader r(*section, issues);
  PassParameters p;
  p.earth_radius_m = r.number_or("earth_radius_km", p.earth_radius_m / 1e3) * 1e3;
  p.orbit_radius_m = r.number_or("orbit_radius_km", p.orbit_radius_m / 1e3) * 1e3;
  p.visibility_window_s = r.require_number("window_s", 1.0, 86400.0).value_or(0.0);
  p.max_elevation_rad = deg_to_rad(r.number_or("max_elevation_deg", 90.0));
  p.angular_speed_rad_s = r.number_or("angular_speed_rad_s", p.angular_speed_rad_s);
  p.carrier_thz = r.require_number("carrier_thz", 1e-3, 1e6).value_or(0.0);
  r.finish({"earth_radius_km", "orbit_radius_km", "max_elevation_deg", "angular_speed_rad_s"});
  try {
    if (p.visibility_window_s > 0.0 && p.carrier_thz > 0.0) p.validate();
  } catch (const std::exception& e) {
    issues.add(section->line, e.what());
  }
  out.pass = p;
}

}  // namespace

SiteDatabase SiteDatabase::load(const std::filesystem::path& path) {
  const Config cfg = Config::load(path);
  IssueCollector issues(cfg.source());
  SiteDatabase db;
  for (const auto& section : cfg.sections()) {
    SiteProfile site = read_site(section, path.parent_path(), issues);
    db.sites_.emplace(site.name, std::move(site));
  }
  if (db.sites_.empty()) issues.add(0, "site database defines no sites");
  issues.throw_if_any();
  return db;
}

const SiteProfile& SiteDatabase::get(const std::string& name) const {
  const auto it = sites_.find(name);
  if (it != sites_.end()) return it->second;
  std::ostringstream oss;
  oss << "unknown site '" << name << "'; known sites:";
  for (const auto& [known, _] : sites_) oss << " " << known;
  throw std::out_of_range(oss.str());
}

ScenarioFile load_scenario(const std::filesystem::path& path, const SiteDatabase& sites) {
  const Config cfg = Config::load(path);
  IssueCollector issues(cfg.source());

  static const char* kKnownSections[] = {"scenario",  "transmitter", "receiver",
                                         "decoy",     "entangled",   "doppler"};
  for (const auto& section : cfg.sections()) {
    const bool known = std::any_of(std::begin(kKnownSections), std::end(kKnownSections),
                                   [&](const char* n) { return section.name == n; });
    if (!known) issues.add(section.line, "unknown section [" + section.name + "]");
  }

  ScenarioFile out;
  read_scenario_section(cfg, out, sites, issues);
  out.link.transmitter = read_terminal(cfg, "transmitter", issues);
  out.link.receiver = read_terminal(cfg, "receiver", issues);
  read_decoy_section(cfg, out, issues);
  read_entangled_section(cfg, out, issues);
  read_doppler_section(cfg, out, issues);

  if (issues.empty()) {
    try {
      out.link.validate();
    } catch (const std::exception& e) {
      issues.add(0, e.what());
    }
  }
  issues.throw_if_any();
  return out;
}

}  // namespace qlink
