#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pneuarm {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Floating-point text form used by every CSV writer: 9 significant digits.
std::string format_number(double v);

/// One parsed CSV table: header names plus row-major numeric cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  ///< -1 when absent
};

/// Reads a comma-separated file with one header line and numeric cells.
/// Throws IoError on unreadable files or non-numeric cells.
CsvTable read_csv(const std::string& path);

/// Writes a header line plus numeric rows at 9 significant digits.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

/// Flat `key = value` configuration; `#` starts a comment, blank lines are
/// skipped. Unknown keys are the caller's concern.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

/// Typed lookups; fall back to `fallback` when the key is absent. Throw
/// IoError when the value does not parse.
double config_double(const std::map<std::string, std::string>& cfg,
                     const std::string& key, double fallback);

}  // namespace pneuarm
