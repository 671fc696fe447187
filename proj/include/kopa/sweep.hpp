#pragma once

#include <string>
#include <vector>

#include "kopa/config.hpp"

namespace kopa {

// One evaluated sweep point. Numeric fields are NaN when the status makes
// them undefined (unstable point, multistable point, ...).
struct SweepRow {
  double value = 0.0;
  double n_s = 0.0;
  double g0 = 0.0;
  double ql_product = 0.0;
  bool stable = false;
  bool single_valued = false;
  int n_stable_roots = 0;
  std::string status;  // "ok" or the failure category
};

// Evaluates every grid point independently; failing points are flagged via
// the status column, never dropped. Points are processed in parallel and
// collected in grid order.
std::vector<SweepRow> run_sweep(const Config& cfg, const SweepSpec& sweep);

}  // namespace kopa
