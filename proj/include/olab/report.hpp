#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace olab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Verdict of a scanned hypothesis inequality. `best_constant` is the max of
// the defining ratio over the scan grid; a success is evidence on that grid,
// a failure carries a witness.
struct ConditionReport {
  bool holds = false;
  double best_constant = 0.0;
  double witness = std::numeric_limits<double>::quiet_NaN();
  double witness2 = std::numeric_limits<double>::quiet_NaN();  // second coordinate for 2-var scans
  double cap = 1e6;   // constants above this count as "unbounded on grid"
  std::string grid;
  std::string note;
  std::vector<std::pair<std::string, ConditionReport>> parts;  // sub-verdicts

  bool all_parts_hold() const {
    for (const auto& p : parts)
      if (!p.second.holds) return false;
    return true;
  }
};

// classify_growth output: class membership flags with observed constants.
struct ClassReport {
  bool in_Gdec = false;
  bool in_Ginc = false;
  bool doubling = false;
  bool almost_increasing = false;
  bool almost_decreasing = false;
  double c_Gdec = kInf;
  double c_Ginc = kInf;
  double c_doubling = kInf;
  double c_almost_increasing = kInf;
  double c_almost_decreasing = kInf;
  std::string grid;
};

}  // namespace olab
