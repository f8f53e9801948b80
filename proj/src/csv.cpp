#include "agpsched/csv.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "agpsched/errors.hpp"

namespace agpsched {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file: " + tmp.string());
    out << content;
    if (!out.good()) throw ValidationError("short write: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string write_csv(const CsvTable& table) {
  std::ostringstream os;
  for (const auto& c : table.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i)
    os << (i ? "," : "") << table.header[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << "\n";
  }
  return os.str();
}

CsvTable parse_csv(const std::string& text, const std::string& source_name) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.find_first_not_of(" \t", 1);
      table.comments.push_back(start == std::string::npos ? "" : line.substr(start));
      continue;
    }
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      cells.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ValidationError(source_name + ":" + std::to_string(line_no) +
                              ": not a number: '" + cell + "'");
      }
      if (used != cell.size())
        throw ValidationError(source_name + ":" + std::to_string(line_no) +
                              ": trailing characters in '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != table.header.size())
      throw ValidationError(source_name + ":" + std::to_string(line_no) +
                            ": column count differs from header");
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ValidationError(source_name + ": missing CSV header");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

std::string config_hash(const std::string& canonical_config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace agpsched
