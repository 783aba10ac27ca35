#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gribov/studies.hpp"
#include "gribov/version.hpp"

namespace gribov {

/// Line 1: "# gribov-spectra v<version>" followed by key=value metadata.
/// Line 2: column header. Then data, numbers with 17 significant digits.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::vector<std::string> format_row(const std::vector<double>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const double x : xs) out.push_back(format_number(x));
  return out;
}

namespace detail {

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string meta_value(const std::string& s) {
  if (s.find_first_of(" \"") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

inline void write_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
  os << '\n';
}

}  // namespace detail

inline void write_csv(std::ostream& os, const CsvTable& t) {
  os << "# " << kToolName << " v" << kVersion;
  std::vector<std::pair<std::string, std::string>> seen;
  for (const auto& kv : t.meta) {
    if (std::find(seen.begin(), seen.end(), kv) != seen.end()) continue;
    seen.push_back(kv);
    os << ' ' << kv.first << '=' << detail::meta_value(kv.second);
  }
  os << '\n';
  detail::write_line(os, t.header);
  for (const auto& r : t.rows) detail::write_line(os, r);
}

inline CsvTable to_csv(const StudyReport& r) {
  CsvTable t;
  t.meta.emplace_back("study", to_string(r.kind));
  for (const auto& kv : r.provenance) t.meta.push_back(kv);
  for (const auto& [k, v] : r.findings) t.meta.emplace_back(k, format_number(v));
  t.header.push_back(r.parameter);
  t.header.insert(t.header.end(), r.columns.begin(), r.columns.end());
  for (const auto& row : r.rows) t.rows.push_back(format_row(row));
  return t;
}

/// Plain-text verdict block: findings, then one PASS/FAIL line per flag.
inline void write_summary(std::ostream& os, const StudyReport& r) {
  os << "study " << to_string(r.kind) << " (" << r.rows.size() << " records over "
     << r.parameter << ")\n";
  for (const auto& [k, v] : r.findings) os << "  " << k << " = " << format_number(v) << '\n';
  for (const auto& f : r.flags) {
    os << (f.value ? "PASS " : "FAIL ") << f.name << " [" << f.source << ' '
       << to_string(f.rule);
    if (f.rule == FlagRule::Below || f.rule == FlagRule::LastBelowFractionOfFirst) {
      os << ' ' << f.threshold;
    }
    os << "]\n";
  }
}

}  // namespace gribov
