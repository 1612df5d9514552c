#include "cablemass/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cablemass/error.hpp"

namespace cablemass {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows) {
  if (static_cast<Eigen::Index>(header.size()) != rows.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "CSV header/column mismatch");
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  out << '\n';
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      out << (c ? "," : "") << format_double(rows(r, c));
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kValidationError,
                "cannot write " + path.string());
  }
  write_csv(out, header, rows);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) table.header.push_back(cell);
  std::vector<std::vector<double>> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParseError,
                    path.string() + ":" + std::to_string(line_no) +
                        ": bad number '" + cell + "'");
      }
    }
    if (row.size() != table.header.size()) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ":" + std::to_string(line_no) +
                      ": wrong column count");
    }
    values.push_back(std::move(row));
  }
  table.rows.resize(static_cast<Eigen::Index>(values.size()),
                    static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t r = 0; r < values.size(); ++r) {
    for (std::size_t c = 0; c < values[r].size(); ++c) {
      table.rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          values[r][c];
    }
  }
  return table;
}

}  // namespace cablemass
