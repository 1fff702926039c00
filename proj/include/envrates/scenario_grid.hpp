#pragma once

// Tabular sweep results: named columns with unit suffixes, one row per
// grid point, plus a per-row flag label (empty when the point is fine).

#include <string>
#include <vector>

namespace envrates {

struct SweepGrid {
  std::vector<std::string> columns; // e.g. "dr_angstrom", each with a unit suffix
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_flags; // parallel to rows; "" = ok

  void add_row(std::vector<double> values, std::string flag = {}) {
    rows.push_back(std::move(values));
    row_flags.push_back(std::move(flag));
  }
};

} // namespace envrates
