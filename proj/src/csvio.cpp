#include "mirrorsim/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

void write_csv(const std::string& path, const CsvTable& table) {
  if (table.format.empty()) throw FormatError("table has no format tag");
  if (table.data.cols() != static_cast<Eigen::Index>(table.columns.size()))
    throw FormatError("column name count does not match the data width");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path + " for writing");

  out << "# format " << table.format << "\n";
  out << "# columns";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : " ") << table.columns[i];
  out << "\n";
  for (const auto& n : table.notes) out << "# " << n << "\n";

  char buf[32];
  for (Eigen::Index r = 0; r < table.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.data.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", table.data(r, c));
      if (c) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw ConfigError("write to " + path + " failed");
}

CsvTable read_csv(const std::string& path, const std::string& expected_format) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# format ", 0) != 0)
    throw FormatError(path + ": missing format tag line");
  t.format = line.substr(9);
  if (!expected_format.empty() && t.format != expected_format)
    throw FormatError(path + ": format " + t.format + ", expected " + expected_format);
  if (!std::getline(in, line) || line.rfind("# columns ", 0) != 0)
    throw FormatError(path + ": missing column list");
  {
    std::stringstream ss(line.substr(10));
    std::string name;
    while (std::getline(ss, name, ',')) t.columns.push_back(name);
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.notes.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size())
      throw FormatError(path + ": row with " + std::to_string(row.size()) +
                        " cells, expected " + std::to_string(t.columns.size()));
    rows.push_back(std::move(row));
  }
  t.data.resize(rows.size(), t.columns.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      t.data(r, c) = rows[r][c];
  return t;
}

}  // namespace mirrorsim
