// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <string_view>

#include "qlink/aperture_optimizer.hpp"
#include "qlink/link_budget.hpp"
#include "qlink/orbit_doppler.hpp"
#include "qlink/qkd_rates.hpp"

namespace qlink {

enum class OutputFormat { kTable, kCsv, kJson };

// Accepts "table", "csv" or "json".
OutputFormat output_format_from_name(std::string_view name);

// All renderers produce deterministic bytes for a fixed payload.
std::string render_ledger(const LossLedger& ledger, const LinkScenario& scenario,
                          OutputFormat format);

// Inverse of the JSON ledger rendering; rendering the parsed ledger again
// reproduces the input bytes.
LossLedger parse_ledger_json(const std::string& text);
std::string render_ledger_json_only(const LossLedger& ledger);

std::string render_zenith_sweep(std::span<const ZenithSweepPoint> sweep, OutputFormat format);
std::string render_aperture_sweep(std::span<const ApertureSweepRow> rows, OutputFormat format);
std::string render_doppler(std::span<const DopplerSample> profile, OutputFormat format);

struct KeyRateReportRow {
  std::string site;
  double loss_db;
  std::string protocol;  // "decoy" or "bbm92"
  KeyRateResult result;
};

std::string render_keyrate_report(std::span<const KeyRateReportRow> rows, OutputFormat format);

}  // namespace qlink
