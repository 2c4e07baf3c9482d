// SPDX-License-Identifier: Apache-2.0
#include "qlink/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qlink {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  const auto pos = s.find('#');
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::string ConfigIssue::str() const {
  std::ostringstream oss;
  oss << source;
  if (line > 0) {
    oss << ":" << line;
    if (column > 0) oss << ":" << column;
  }
  oss << ": " << message;
  return oss.str();
}

std::string ConfigError::format(const std::vector<ConfigIssue>& issues) {
  std::ostringstream oss;
  oss << issues.size() << (issues.size() == 1 ? " problem:" : " problems:");
  for (const auto& issue : issues) oss << "\n  " << issue.str();
  return oss.str();
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(format(issues)), issues_(std::move(issues)) {}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

Config Config::parse(std::string_view text, std::string source_name) {
  Config cfg;
  cfg.source_ = std::move(source_name);
  std::vector<ConfigIssue> issues;
  ConfigSection* current = nullptr;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({cfg.source_, line_no, 1, "unterminated section header"});
        continue;
      }
      std::string name{trim(line.substr(1, line.size() - 2))};
      if (name.empty()) {
        issues.push_back({cfg.source_, line_no, 1, "empty section name"});
        continue;
      }
      if (cfg.find(name) != nullptr) {
        issues.push_back({cfg.source_, line_no, 1, "duplicate section [" + name + "]"});
        continue;
      }
      cfg.sections_.push_back({std::move(name), line_no, {}});
      current = &cfg.sections_.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({cfg.source_, line_no, 1, "expected 'key = value'"});
      continue;
    }
    std::string key{trim(line.substr(0, eq))};
    std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) {
      issues.push_back({cfg.source_, line_no, 1, "empty key"});
      continue;
    }
    if (current == nullptr) {
      issues.push_back({cfg.source_, line_no, 1, "key '" + key + "' outside any [section]"});
      continue;
    }
    if (current->entries.count(key) != 0) {
      issues.push_back({cfg.source_, line_no, 1,
                        "duplicate key '" + key + "' in [" + current->name + "]"});
      continue;
    }
    current->entries.emplace(std::move(key), ConfigEntry{std::move(value), line_no});
  }

  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({{path.string(), 0, 0, "cannot open file"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const ConfigSection* Config::find(std::string_view name) const {
  for (const auto& s : sections_)
    if (s.name == name) return &s;
  return nullptr;
}

void IssueCollector::add(int line, std::string message, int column) {
  issues_.push_back({source_, line, column, std::move(message)});
}

void IssueCollector::throw_if_any() const {
  if (!issues_.empty()) throw ConfigError(issues_);
}

SectionReader::SectionReader(const ConfigSection& section, IssueCollector& issues)
    : section_(section), issues_(issues) {}

const ConfigEntry* SectionReader::consume(const std::string& key) {
  if (std::find(requested_.begin(), requested_.end(), key) == requested_.end())
    requested_.push_back(key);
  const auto it = section_.entries.find(key);
  if (it == section_.entries.end()) return nullptr;
  consumed_[key] = true;
  return &it->second;
}

std::optional<std::string> SectionReader::get_string(const std::string& key) {
  const auto* entry = consume(key);
  if (entry == nullptr) return std::nullopt;
  return entry->value;
}

std::optional<double> SectionReader::get_number(const std::string& key) {
  const auto* entry = consume(key);
  if (entry == nullptr) return std::nullopt;
  const auto value = parse_number(entry->value);
  if (!value) {
    issues_.add(entry->line, "[" + section_.name + "] " + key + ": '" + entry->value +
                                 "' is not a number");
    return std::nullopt;
  }
  return value;
}

std::optional<double> SectionReader::require_number(const std::string& key, double lo,
                                                    double hi) {
  const auto* entry = section_.entries.count(key) ? &section_.entries.at(key) : nullptr;
  const auto value = get_number(key);
  if (!value) {
    if (entry == nullptr)
      issues_.add(section_.line, "[" + section_.name + "] missing required key '" + key + "'");
    return std::nullopt;
  }
  if (*value < lo || *value > hi) {
    std::ostringstream oss;
    oss << "[" << section_.name << "] " << key << ": " << *value << " outside [" << lo << ", "
        << hi << "]";
    issues_.add(entry->line, oss.str());
    return std::nullopt;
  }
  return value;
}

std::optional<std::string> SectionReader::require_string(const std::string& key) {
  auto value = get_string(key);
  if (!value)
    issues_.add(section_.line, "[" + section_.name + "] missing required key '" + key + "'");
  return value;
}

double SectionReader::number_or(const std::string& key, double fallback) {
  const auto value = get_number(key);
  return value.value_or(fallback);
}

std::map<double, double> SectionReader::numbers_by_wavelength(const std::string& prefix) {
  std::map<double, double> out;
  for (const auto& [key, entry] : section_.entries) {
    if (key.rfind(prefix, 0) != 0) continue;
    std::string_view tail{key};
    tail.remove_prefix(prefix.size());
    if (tail.size() < 3 || tail.substr(tail.size() - 2) != "nm") continue;
    const auto wl = parse_number(tail.substr(0, tail.size() - 2));
    if (!wl) continue;
    consumed_[key] = true;
    const auto value = parse_number(entry.value);
    if (!value) {
      issues_.add(entry.line,
                  "[" + section_.name + "] " + key + ": '" + entry.value + "' is not a number");
      continue;
    }
    out[*wl] = *value;
  }
  requested_.push_back(prefix + "<wavelength>nm");
  return out;
}

void SectionReader::finish(const std::vector<std::string>& known) {
  std::vector<std::string> pool = requested_;
  pool.insert(pool.end(), known.begin(), known.end());
  for (const auto& [key, entry] : section_.entries) {
    if (consumed_.count(key) != 0) continue;
    std::string best;
    std::size_t best_d = static_cast<std::size_t>(-1);
    for (const auto& cand : pool) {
      const std::size_t d = levenshtein(key, cand);
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
    }
    std::string msg = "[" + section_.name + "] unknown key '" + key + "'";
    if (!best.empty() && best_d <= std::max<std::size_t>(2, key.size() / 3))
      msg += "; did you mean '" + best + "'?";
    issues_.add(entry.line, msg);
  }
}

}  // namespace qlink
