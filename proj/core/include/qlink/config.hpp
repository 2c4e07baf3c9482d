// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlink {

// Scenario and site files use a small sectioned key-value format:
//
//   # comment (also allowed after a value)
//   [section]
//   some_key_m = 1.5
//
// Units are spelled in key names, keys unknown to the consuming schema are
// rejected (with a nearest-key suggestion), and validation reports every
// problem in the file rather than the first one.

struct ConfigIssue {
  std::string source;  // file name or label
  int line = 0;        // 1-based; 0 when not tied to a line
  int column = 0;
  std::string message;

  std::string str() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  static std::string format(const std::vector<ConfigIssue>& issues);
  std::vector<ConfigIssue> issues_;
};

struct ConfigEntry {
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::map<std::string, ConfigEntry> entries;
};

class Config {
 public:
  static Config parse(std::string_view text, std::string source_name);
  static Config load(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  const std::vector<ConfigSection>& sections() const { return sections_; }
  const ConfigSection* find(std::string_view name) const;

 private:
  std::string source_;
  std::vector<ConfigSection> sections_;
};

// Accumulates validation problems so loaders can report them all at once.
class IssueCollector {
 public:
  explicit IssueCollector(std::string source) : source_(std::move(source)) {}
  void add(int line, std::string message, int column = 0);
  bool empty() const { return issues_.empty(); }
  void throw_if_any() const;

 private:
  std::string source_;
  std::vector<ConfigIssue> issues_;
};

// Typed, consumption-tracked view of one section. `finish()` flags any key
// that no reader asked for, suggesting the closest known spelling.
class SectionReader {
 public:
  SectionReader(const ConfigSection& section, IssueCollector& issues);

  std::optional<std::string> get_string(const std::string& key);
  std::optional<double> get_number(const std::string& key);
  // Missing key -> issue + nullopt. Bounds are inclusive.
  std::optional<double> require_number(const std::string& key, double lo, double hi);
  std::optional<std::string> require_string(const std::string& key);
  double number_or(const std::string& key, double fallback);

  // Collects keys shaped `<prefix><wavelength>nm`, e.g. transmittance_810nm.
  std::map<double, double> numbers_by_wavelength(const std::string& prefix);

  int section_line() const { return section_.line; }
  // Report unconsumed keys. `known` seeds the suggestion pool beyond the
  // keys actually read (useful for optional keys never touched this run).
  void finish(const std::vector<std::string>& known = {});

 private:
  const ConfigEntry* consume(const std::string& key);

  const ConfigSection& section_;
  IssueCollector& issues_;
  std::vector<std::string> requested_;
  std::map<std::string, bool> consumed_;
};

// Parses a full string as a number (issue otherwise); used by SectionReader
// and the CSV loaders.
std::optional<double> parse_number(std::string_view text);

}  // namespace qlink
