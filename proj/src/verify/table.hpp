#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace microlift {

// CSV with leading '#' lines naming conventions; numbers in round-trip precision.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void note(const std::string& line) { notes_.push_back(line); }
  // measure, metric and ledger lines shared by every table
  void conventions(const std::string& ledger_version);
  void add_row(std::vector<std::string> cells);

  std::string str() const;
  // "-" or empty writes to stdout
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> notes_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fmt(double x);
std::string fmt(long long x);

}  // namespace microlift
