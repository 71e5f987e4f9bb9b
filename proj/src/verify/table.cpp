#include "verify/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace microlift {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(long long x) { return std::to_string(x); }

void CsvTable::conventions(const std::string& ledger_version) {
  note("circle measure: (1/2pi) int_0^{2pi}; triple functional (2pi)^{-3} int; angles in radians");
  note("metric: 4|dz|^2/(1-|z|^2)^2 (curvature -1), bracket e^{<z,b>} = (1-|z|^2)/|z-e^{ib}|^2");
  note("constants ledger version: " + (ledger_version.empty() ? std::string("none") : ledger_version));
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw Error(ErrorCode::Internal, "verify", "row width does not match the table header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string s;
  for (const auto& n : notes_) s += "# " + n + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    s += "\n";
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return s;
}

void CsvTable::write(const std::string& path) const {
  if (path.empty() || path == "-") {
    std::cout << str();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "verify", "cannot write " + path);
  out << str();
}

}  // namespace microlift
