#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace agpsched {

/// Shortest representation that round-trips a double exactly (17 significant
/// digits); all numeric file output goes through this.
std::string format_double(double v);

/// Write-temp-then-rename so partially written files never become visible.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

struct CsvTable {
  std::vector<std::string> comments;  // leading '#' lines, without the '#'
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string write_csv(const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& source_name = "<string>");

/// FNV-1a over the canonical configuration string; stable across runs and
/// platforms. Rendered as 16 hex digits.
std::string config_hash(const std::string& canonical_config);

}  // namespace agpsched
