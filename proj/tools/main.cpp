// SPDX-License-Identifier: Apache-2.0
//
// qlink: link budgets, turbulence statistics, pass geometry and QKD key
// rates for ground-satellite and horizontal free-space optical links.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlink/aperture_optimizer.hpp"
#include "qlink/config.hpp"
#include "qlink/link_budget.hpp"
#include "qlink/orbit_doppler.hpp"
#include "qlink/qkd_rates.hpp"
#include "qlink/render.hpp"
#include "qlink/scenario.hpp"
#include "qlink/units.hpp"
#include "qlink/validation.hpp"

namespace fs = std::filesystem;
using namespace qlink;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;  // content failed validation or checks failed
constexpr int kExitInput = 2;       // unreadable input, bad arguments

struct GlobalOpts {
  std::string format = "table";
  bool format_given = false;  // scenario-level output_format applies otherwise
  std::string out;
  std::string data_dir;
  std::uint64_t seed = 1;
};

OutputFormat pick_format(const GlobalOpts& g, const ScenarioFile& sc) {
  if (!g.format_given && sc.output_format) return output_format_from_name(*sc.output_format);
  return output_format_from_name(g.format);
}

fs::path data_dir(const GlobalOpts& g) {
  if (!g.data_dir.empty()) return g.data_dir;
  if (const char* env = std::getenv("QLINK_DATA_DIR")) return env;
  return "data";
}

fs::path resolve_scenario(const GlobalOpts& g, const std::string& arg) {
  fs::path p{arg};
  if (fs::exists(p)) return p;
  fs::path named = data_dir(g) / "scenarios" / arg;
  if (named.extension().empty()) named += ".cfg";
  if (fs::exists(named)) return named;
  throw ConfigError({{arg, 0, 0, "cannot open scenario (looked at '" + named.string() + "')"}});
}

SiteDatabase load_sites(const GlobalOpts& g) { return SiteDatabase::load(data_dir(g) / "sites.cfg"); }

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw ConfigError({{g.out, 0, 0, "cannot open output file"}});
  out << text;
}

int cmd_budget(const GlobalOpts& g, const std::string& scenario_arg, long mc_samples) {
  const SiteDatabase sites = load_sites(g);
  const ScenarioFile sc = load_scenario(resolve_scenario(g, scenario_arg), sites);
  const LossLedger ledger = assemble_ledger(sc.link);
  const OutputFormat fmt = pick_format(g, sc);
  std::string text = render_ledger(ledger, sc.link, fmt);

  if (mc_samples > 0 && fmt == OutputFormat::kTable) {
    const auto diag = link_turbulence_diagnostics(sc.link);
    const auto samples = sample_received_power(sc.link, diag.beta, diag.rytov_log_variance,
                                               g.seed, static_cast<std::size_t>(mc_samples));
    double mean_i = 0, mean_s = 0, mean_pr = 0;
    for (const auto& s : samples) {
      mean_i += s.fading_i;
      mean_s += s.fading_s;
      mean_pr += s.pr_w;
    }
    mean_i /= static_cast<double>(samples.size());
    mean_s /= static_cast<double>(samples.size());
    mean_pr /= static_cast<double>(samples.size());
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "fading over %ld draws (seed %llu): mean I = %.6f (beta/(beta+1) = %.6f), "
                  "mean S = %.6f, mean Pr = %.6e W\n",
                  mc_samples, static_cast<unsigned long long>(g.seed), mean_i,
                  beta_mean_fading(diag.beta), mean_s, mean_pr);
    text += buf;
  }
  emit(g, text);
  return kExitOk;
}

int cmd_sweep_zenith(const GlobalOpts& g, const std::string& scenario_arg, double max_deg,
                     double step_deg) {
  if (!(max_deg > 0.0 && max_deg < 90.0) || !(step_deg > 0.0))
    throw CLI::ValidationError("--max-deg must lie in (0, 90) and --step-deg must be positive");
  const SiteDatabase sites = load_sites(g);
  const ScenarioFile sc = load_scenario(resolve_scenario(g, scenario_arg), sites);
  std::vector<double> angles;
  for (double d = 0.0; d <= max_deg + 1e-9; d += step_deg) angles.push_back(deg_to_rad(d));
  const auto sweep = zenith_sweep(sc.link, angles);
  emit(g, render_zenith_sweep(sweep, pick_format(g, sc)));
  return kExitOk;
}

int cmd_sweep_aperture(const GlobalOpts& g, const std::string& scenario_arg,
                       std::vector<double> diameters) {
  const SiteDatabase sites = load_sites(g);
  const ScenarioFile sc = load_scenario(resolve_scenario(g, scenario_arg), sites);
  if (diameters.empty())
    diameters = {0.08, 0.12, 0.14, 0.15, 0.16, 0.20, 0.24};
  BeamGeometry tpl{sc.link.transmitter.beam_waist_m, sc.link.wavelength_nm, sc.link.range_m,
                   sc.link.zenith_rad, sc.link.site.altitude_m};
  const auto rows = sweep_aperture(tpl, sc.link.site, std::move(diameters),
                                   sc.working_r0_m.value_or(0.0));
  std::string text = render_aperture_sweep(rows, pick_format(g, sc));
  const auto best = optimal_aperture(rows);
  if (pick_format(g, sc) == OutputFormat::kTable) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "optimal aperture: %.3f m%s\n", best.diameter_m,
                  best.interior ? "" : " (on sweep boundary; widen the range)");
    text += buf;
  }
  emit(g, text);
  return kExitOk;
}

int cmd_keyrate(const GlobalOpts& g, const std::string& scenario_arg, const std::string& protocol,
                const std::vector<double>& source_rates) {
  const SiteDatabase sites = load_sites(g);
  const ScenarioFile sc = load_scenario(resolve_scenario(g, scenario_arg), sites);
  const double loss_db = assemble_ledger(sc.link).total_loss_db;

  std::vector<KeyRateReportRow> rows;
  auto add_row = [&](double rate_override) {
    if (protocol == "decoy") {
      if (!sc.decoy)
        throw ConfigError({{sc.name, 0, 0, "scenario has no [decoy] section"}});
      DecoyParams p = *sc.decoy;
      if (rate_override > 0.0) p.source_rate_hz = rate_override;
      rows.push_back({sc.link.site.name, loss_db, "decoy", keyrate_decoy(p, loss_db)});
    } else if (protocol == "bbm92") {
      if (!sc.entangled)
        throw ConfigError({{sc.name, 0, 0, "scenario has no [entangled] section"}});
      EntangledScenario es = *sc.entangled;
      if (rate_override > 0.0) es.pair_rate_hz = rate_override;
      rows.push_back(
          {sc.link.site.name, loss_db, "bbm92", keyrate_bbm92(make_entangled_params(es, loss_db))});
    } else {
      throw CLI::ValidationError("--protocol must be decoy or bbm92");
    }
  };
  if (source_rates.empty())
    add_row(0.0);
  else
    for (double r : source_rates) add_row(r);

  emit(g, render_keyrate_report(rows, pick_format(g, sc)));
  return kExitOk;
}

int cmd_doppler(const GlobalOpts& g, const std::string& scenario_arg, int samples) {
  const SiteDatabase sites = load_sites(g);
  const ScenarioFile sc = load_scenario(resolve_scenario(g, scenario_arg), sites);
  if (!sc.pass) throw ConfigError({{sc.name, 0, 0, "scenario has no [doppler] section"}});
  const auto profile = doppler_profile(*sc.pass, samples);
  emit(g, render_doppler(profile, pick_format(g, sc)));
  return kExitOk;
}

int cmd_validate(const GlobalOpts& g, const std::string& which) {
  const SiteDatabase sites = load_sites(g);
  const auto report = run_validation_suite(which, sites, data_dir(g) / "scenarios");
  emit(g, render_validation_report(report, output_format_from_name(g.format)));
  return report.all_pass ? kExitOk : kExitValidation;
}

int cmd_fit_detectors(const GlobalOpts& g, const std::string& csv_path, double mu,
                      double det_eff) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError({{csv_path, 0, 0, "cannot open file"}});
  std::vector<std::pair<double, double>> points;
  std::string line;
  int line_no = 0;
  IssueCollector issues(csv_path);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line_no == 1) continue;  // header: loss_db,qber
    const auto comma = line.find(',');
    const auto loss = comma == std::string::npos
                          ? std::nullopt
                          : parse_number(std::string_view(line).substr(0, comma));
    const auto qber = comma == std::string::npos
                          ? std::nullopt
                          : parse_number(std::string_view(line).substr(comma + 1));
    if (!loss || !qber) {
      issues.add(line_no, "expected 'loss_db,qber'");
      continue;
    }
    points.emplace_back(*loss, *qber);
  }
  issues.throw_if_any();

  const DetectorFit fit = fit_detector_params(points, mu, det_eff);
  const OutputFormat fmt = output_format_from_name(g.format);
  if (fmt == OutputFormat::kJson) {
    nlohmann::ordered_json j{{"dark_count_y0", fit.dark_count_y0},
                             {"detector_error", fit.detector_error},
                             {"max_abs_residual", fit.max_abs_residual},
                             {"residuals", fit.residuals}};
    emit(g, j.dump(2) + "\n");
  } else {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "dark_count_y0 = %.8e\ndetector_error = %.8e\nmax_abs_residual = %.3e\n",
                  fit.dark_count_y0, fit.detector_error, fit.max_abs_residual);
    emit(g, buf);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free-space optical link budgets, turbulence and QKD key rates"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  auto* format_opt = app.add_option("--format", g.format, "output format: table|csv|json")
                         ->default_val("table");
  app.add_option("--out", g.out, "write output to a file instead of stdout");
  app.add_option("--data-dir", g.data_dir, "data directory (default $QLINK_DATA_DIR or ./data)");
  app.add_option("--seed", g.seed, "seed for Monte Carlo sampling")->default_val(1);

  std::string scenario_arg, protocol = "decoy", validate_which, csv_path;
  long mc_samples = 0;
  double max_deg = 70.0, step_deg = 5.0, fit_mu = 0.5, fit_eff = 1.0;
  int doppler_samples = 201;
  std::vector<double> diameters, source_rates;

  auto* budget = app.add_subcommand("budget", "assemble the loss ledger for a scenario");
  budget->add_option("scenario", scenario_arg)->required();
  budget->add_option("--mc-samples", mc_samples, "append fading statistics over N draws");

  auto* sweep_z = app.add_subcommand("sweep-zenith", "excess loss vs zenith angle");
  sweep_z->add_option("scenario", scenario_arg)->required();
  sweep_z->add_option("--max-deg", max_deg)->default_val(70.0);
  sweep_z->add_option("--step-deg", step_deg)->default_val(5.0);

  auto* sweep_a = app.add_subcommand("sweep-aperture", "aperture-dependent loss sweep");
  sweep_a->add_option("scenario", scenario_arg)->required();
  sweep_a->add_option("--diameters", diameters, "diameters in metres")->delimiter(',');

  auto* keyrate = app.add_subcommand("keyrate", "secret-key rate for a scenario");
  keyrate->add_option("scenario", scenario_arg)->required();
  keyrate->add_option("--protocol", protocol, "decoy|bbm92")->default_val("decoy");
  keyrate->add_option("--source-rates", source_rates, "sweep of source rates in Hz")
      ->delimiter(',');

  auto* doppler = app.add_subcommand("doppler", "pass Doppler profile");
  doppler->add_option("scenario", scenario_arg)->required();
  doppler->add_option("--samples", doppler_samples)->default_val(201);

  auto* validate = app.add_subcommand("validate", "run a shipped validation suite");
  validate->add_option("suite", validate_which, "canary|ottawa")->required();

  auto* fit = app.add_subcommand("fit-detectors", "fit (Y0, e_det) to loss/QBER points");
  fit->add_option("csv", csv_path, "CSV with header loss_db,qber")->required();
  fit->add_option("--mu", fit_mu)->default_val(0.5);
  fit->add_option("--detector-efficiency", fit_eff)->default_val(1.0);

  CLI11_PARSE(app, argc, argv);
  g.format_given = format_opt->count() > 0;

  try {
    if (budget->parsed()) return cmd_budget(g, scenario_arg, mc_samples);
    if (sweep_z->parsed()) return cmd_sweep_zenith(g, scenario_arg, max_deg, step_deg);
    if (sweep_a->parsed()) return cmd_sweep_aperture(g, scenario_arg, diameters);
    if (keyrate->parsed()) return cmd_keyrate(g, scenario_arg, protocol, source_rates);
    if (doppler->parsed()) return cmd_doppler(g, scenario_arg, doppler_samples);
    if (validate->parsed()) return cmd_validate(g, validate_which);
    if (fit->parsed()) return cmd_fit_detectors(g, csv_path, fit_mu, fit_eff);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& issue : e.issues())
      if (issue.line == 0 && issue.message.rfind("cannot open", 0) == 0) return kExitInput;
    return kExitValidation;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitInput;
}
