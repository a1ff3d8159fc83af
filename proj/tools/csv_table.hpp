#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ratiolaw/error.hpp"

namespace ratiolaw::cli {

// Minimal header + numeric-column reader for the CLI's CSV inputs.
class CsvTable {
 public:
  static CsvTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    CsvTable table;
    table.source_ = path;
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file, expected a header row");
    table.header_ = split(line);
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      table.rows_.push_back(split(line));
    }
    return table;
  }

  bool has(const std::string& column) const {
    return std::find(header_.begin(), header_.end(), column) != header_.end();
  }

  std::vector<double> numeric(const std::string& column) const {
    const auto it = std::find(header_.begin(), header_.end(), column);
    if (it == header_.end()) throw DataError(source_ + ": missing `" + column + "` column");
    const auto c = static_cast<std::size_t>(it - header_.begin());
    std::vector<double> out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::string cell = c < rows_[r].size() ? rows_[r][c] : "";
      try {
        std::size_t used = 0;
        out.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw DataError(source_ + ": non-numeric cell at row " + std::to_string(r) + ", column '" + column + "': '" +
                        cell + "'");
      }
    }
    return out;
  }

 private:
  static std::vector<std::string> split(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  }

  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace ratiolaw::cli
