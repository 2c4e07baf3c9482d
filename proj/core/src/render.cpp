// SPDX-License-Identifier: Apache-2.0
#include "qlink/render.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qlink/units.hpp"

namespace qlink {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v, const char* fmt = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string fixed2(double v) { return num(v, "%.2f"); }

const char* direction_name(LinkDirection d) {
  switch (d) {
    case LinkDirection::kUplink: return "uplink";
    case LinkDirection::kDownlink: return "downlink";
    case LinkDirection::kHorizontal: return "horizontal";
  }
  return "?";
}

std::string ledger_table(const LossLedger& ledger, const LinkScenario& sc) {
  std::ostringstream oss;
  oss << "Link budget: " << sc.name << "  (" << sc.site.name << ", "
      << num(sc.wavelength_nm) << " nm, " << num(sc.range_m / 1e3) << " km, zenith "
      << num(rad_to_deg(sc.zenith_rad)) << " deg, " << direction_name(sc.direction) << ")\n";
  oss << "No  Parameter                             unit  value\n";
  int i = 0;
  for (const auto& row : ledger.rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-3d %-37s dB    %8s\n", ++i, row.label.c_str(),
                  fixed2(row.value_db).c_str());
    oss << line;
  }
  char total[128];
  std::snprintf(total, sizeof(total), "    %-37s dB    %8s\n", "Total loss",
                fixed2(ledger.total_loss_db).c_str());
  oss << total;
  return oss.str();
}

std::string ledger_csv(const LossLedger& ledger) {
  std::ostringstream oss;
  oss << "label,value_db,provenance\n";
  for (const auto& row : ledger.rows)
    oss << row.label << "," << num(row.value_db) << "," << row.provenance << "\n";
  oss << "Total loss," << num(ledger.total_loss_db) << ",-(sum of rows)\n";
  return oss.str();
}

ordered_json ledger_to_json(const LossLedger& ledger) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : ledger.rows)
    rows.push_back({{"label", row.label},
                    {"value_db", row.value_db},
                    {"provenance", row.provenance}});
  return {{"rows", std::move(rows)}, {"total_loss_db", ledger.total_loss_db}};
}

std::string ledger_json(const LossLedger& ledger, const LinkScenario& sc) {
  ordered_json j;
  j["scenario"] = {{"name", sc.name},
                   {"site", sc.site.name},
                   {"wavelength_nm", sc.wavelength_nm},
                   {"range_m", sc.range_m},
                   {"zenith_deg", rad_to_deg(sc.zenith_rad)},
                   {"direction", direction_name(sc.direction)},
                   {"tx_power_w", sc.tx_power_w}};
  j["ledger"] = ledger_to_json(ledger);
  return j.dump(2) + "\n";
}

}  // namespace

OutputFormat output_format_from_name(std::string_view name) {
  if (name == "table") return OutputFormat::kTable;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw std::invalid_argument("unknown output format '" + std::string(name) +
                              "' (expected table|csv|json)");
}

std::string render_ledger(const LossLedger& ledger, const LinkScenario& scenario,
                          OutputFormat format) {
  switch (format) {
    case OutputFormat::kTable: return ledger_table(ledger, scenario);
    case OutputFormat::kCsv: return ledger_csv(ledger);
    case OutputFormat::kJson: return ledger_json(ledger, scenario);
  }
  return {};
}

std::string render_ledger_json_only(const LossLedger& ledger) {
  return ledger_to_json(ledger).dump(2) + "\n";
}

LossLedger parse_ledger_json(const std::string& text) {
  const auto j = ordered_json::parse(text);
  const auto& body = j.contains("ledger") ? j.at("ledger") : j;
  LossLedger ledger;
  for (const auto& row : body.at("rows"))
    ledger.rows.push_back({row.at("label").get<std::string>(), row.at("value_db").get<double>(),
                           row.at("provenance").get<std::string>()});
  ledger.total_loss_db = body.at("total_loss_db").get<double>();
  return ledger;
}

std::string render_zenith_sweep(std::span<const ZenithSweepPoint> sweep, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: {
      std::ostringstream oss;
      oss << "angle_deg,excess_loss_db\n";
      for (const auto& p : sweep)
        oss << num(rad_to_deg(p.angle_rad)) << "," << num(p.excess_loss_db) << "\n";
      return oss.str();
    }
    case OutputFormat::kTable: {
      std::ostringstream oss;
      oss << "zenith_deg  excess_loss_db\n";
      for (const auto& p : sweep) {
        char line[64];
        std::snprintf(line, sizeof(line), "%10s  %14s\n",
                      fixed2(rad_to_deg(p.angle_rad)).c_str(), fixed2(p.excess_loss_db).c_str());
        oss << line;
      }
      return oss.str();
    }
    case OutputFormat::kJson: {
      ordered_json arr = ordered_json::array();
      for (const auto& p : sweep)
        arr.push_back(
            {{"angle_deg", rad_to_deg(p.angle_rad)}, {"excess_loss_db", p.excess_loss_db}});
      return arr.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_aperture_sweep(std::span<const ApertureSweepRow> rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: {
      std::ostringstream oss;
      oss << "d_m,wander_db,turbulence_db,total_db\n";
      for (const auto& r : rows)
        oss << num(r.diameter_m) << "," << num(r.beam_wander_loss_db) << ","
            << num(r.turbulence_loss_db) << "," << num(r.total_db) << "\n";
      return oss.str();
    }
    case OutputFormat::kTable: {
      std::ostringstream oss;
      oss << "d_cm   wander_db  turbulence_db  total_db\n";
      for (const auto& r : rows) {
        char line[96];
        std::snprintf(line, sizeof(line), "%5s  %9s  %13s  %8s\n",
                      fixed2(r.diameter_m * 100).c_str(), fixed2(r.beam_wander_loss_db).c_str(),
                      fixed2(r.turbulence_loss_db).c_str(), fixed2(r.total_db).c_str());
        oss << line;
      }
      return oss.str();
    }
    case OutputFormat::kJson: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back({{"d_m", r.diameter_m},
                       {"wander_db", r.beam_wander_loss_db},
                       {"turbulence_db", r.turbulence_loss_db},
                       {"total_db", r.total_db}});
      return arr.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_doppler(std::span<const DopplerSample> profile, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: {
      std::ostringstream oss;
      oss << "t_s,df_over_f,df_hz\n";
      for (const auto& s : profile)
        oss << num(s.t_s) << "," << num(s.df_over_f) << "," << num(s.df_hz) << "\n";
      return oss.str();
    }
    case OutputFormat::kTable: {
      std::ostringstream oss;
      oss << "t_s        df_over_f      df_hz\n";
      for (const auto& s : profile) {
        char line[96];
        std::snprintf(line, sizeof(line), "%9s  %13s  %11s\n", fixed2(s.t_s).c_str(),
                      num(s.df_over_f, "%.6e").c_str(), num(s.df_hz, "%.4e").c_str());
        oss << line;
      }
      return oss.str();
    }
    case OutputFormat::kJson: {
      ordered_json arr = ordered_json::array();
      for (const auto& s : profile)
        arr.push_back({{"t_s", s.t_s}, {"df_over_f", s.df_over_f}, {"df_hz", s.df_hz}});
      return arr.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_keyrate_report(std::span<const KeyRateReportRow> rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: {
      std::ostringstream oss;
      oss << "site,loss_db,protocol,qber,key_bps,secure\n";
      for (const auto& r : rows)
        oss << r.site << "," << num(r.loss_db) << "," << r.protocol << "," << num(r.result.qber)
            << "," << num(r.result.key_rate_bps) << "," << (r.result.secure ? "true" : "false")
            << "\n";
      return oss.str();
    }
    case OutputFormat::kTable: {
      std::ostringstream oss;
      oss << "site              loss_db  protocol  qber_pct  key_bps    secure\n";
      for (const auto& r : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-16s  %7s  %-8s  %8s  %9s  %s\n", r.site.c_str(),
                      fixed2(r.loss_db).c_str(), r.protocol.c_str(),
                      fixed2(100 * r.result.qber).c_str(), fixed2(r.result.key_rate_bps).c_str(),
                      r.result.secure ? "yes" : "no");
        oss << line;
      }
      return oss.str();
    }
    case OutputFormat::kJson: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back({{"site", r.site},
                       {"loss_db", r.loss_db},
                       {"protocol", r.protocol},
                       {"qber", r.result.qber},
                       {"key_rate_per_pulse", r.result.key_rate_per_pulse},
                       {"key_bps", r.result.key_rate_bps},
                       {"secure", r.result.secure}});
      return arr.dump(2) + "\n";
    }
  }
  return {};
}

}  // namespace qlink
