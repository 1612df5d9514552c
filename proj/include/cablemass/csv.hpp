#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cablemass {

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double value);

/// Header row then one line per matrix row, '\n'-terminated.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows);
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows);

struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd rows;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace cablemass
