#pragma once

// Uniform result record for every inequality check: the sampled profile or
// gap list, the worst gap, the tolerance it was judged against, and
// coarse-vs-fine convergence evidence.

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotlab/common.hpp"

namespace rotlab {

struct CheckReport {
  std::string name;
  nlohmann::ordered_json params;  // inputs that identify the run
  std::vector<double> grid;       // t or lambda samples (may be empty)
  std::vector<double> profile;    // sampled profile values (may be empty)
  std::vector<double> gaps;       // inequality gaps; pass needs all >= -tolerance
  double min_gap = std::numeric_limits<double>::infinity();
  double tolerance = 1e-6;
  double convergence_delta = 0;   // coarse-vs-fine discrepancy
  bool pass = false;
  bool unresolved = false;
  nlohmann::ordered_json extra;   // ratios, witnesses, secondary gaps

  /// Sets min_gap/pass/unresolved from gaps, tolerance and convergence_delta.
  /// A marginally negative min_gap with unconverged quadrature is flagged
  /// `unresolved` instead of failing.
  void finalize() {
    min_gap = std::numeric_limits<double>::infinity();
    for (double g : gaps) min_gap = std::min(min_gap, g);
    if (gaps.empty()) min_gap = 0;
    pass = min_gap >= -tolerance;
    unresolved = pass && min_gap < 0 && convergence_delta > tolerance / 10;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["params"] = params;
    j["grid"] = grid;
    j["profile"] = profile;
    j["gaps"] = gaps;
    j["min_gap"] = min_gap;
    j["tolerance"] = tolerance;
    j["convergence_delta"] = convergence_delta;
    j["pass"] = pass;
    j["unresolved"] = unresolved;
    if (!extra.is_null()) j["extra"] = extra;
    return j;
  }

  /// Plot data: t, profile, second_difference (rows padded with empty cells).
  std::string to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "t,profile,second_difference\n";
    const size_t rows = std::max({grid.size(), profile.size(), gaps.size()});
    for (size_t i = 0; i < rows; ++i) {
      if (i < grid.size()) os << grid[i];
      os << ',';
      if (i < profile.size()) os << profile[i];
      os << ',';
      // gaps are -(second differences) on profile checks
      if (i < gaps.size()) os << -gaps[i];
      os << '\n';
    }
    return os.str();
  }
};

}  // namespace rotlab
