// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qlink/render.hpp"
#include "qlink/scenario.hpp"

namespace qlink {

struct ValidationCheck {
  std::string name;
  double measured = 0.0;
  double expected_lo = 0.0;
  double expected_hi = 0.0;
  bool pass = false;
  bool informational = false;  // reported but never fails the suite
  std::string note;
};

struct ValidationReport {
  std::string suite;
  std::vector<ValidationCheck> checks;
  bool all_pass = false;
};

// `which` is "canary" (horizontal 143.6 km island link: end-to-end loss
// envelopes, extinction band, coherence-length wavelength scaling) or
// "ottawa" (sub-arctic LEO budget assembles cleanly).
ValidationReport run_validation_suite(std::string_view which, const SiteDatabase& sites,
                                      const std::filesystem::path& scenario_dir);

std::string render_validation_report(const ValidationReport& report, OutputFormat format);

}  // namespace qlink
