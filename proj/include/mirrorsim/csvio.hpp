#pragma once

// Plain-text table output shared by the command-line tools. Every file starts
// with a format tag line and a column list so downstream scripts can check
// what they are reading; numbers are printed with 17 significant digits so a
// written value reparses to the same double.

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mirrorsim {

struct CsvTable {
  std::string format;  // e.g. "mirrorsim-trace/1"
  std::vector<std::string> columns;
  Eigen::MatrixXd data;  // one row per record
  std::vector<std::string> notes;  // extra comment lines, written after the header
};

void write_csv(const std::string& path, const CsvTable& table);

// Reads a file written by write_csv. Throws FormatError when the format tag
// is missing or does not match expected_format (when non-empty).
CsvTable read_csv(const std::string& path, const std::string& expected_format = "");

}  // namespace mirrorsim
