#pragma once

#include <istream>
#include <optional>
#include <string>

#include "kopa/oracle.hpp"
#include "kopa/params.hpp"

namespace kopa {

struct SweepSpec {
  std::string variable;  // kappa | g_opa | delta | epsilon | lambda_kerr | phi_h
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  enum class LambdaMode { fixed, auto_real_alpha };
  LambdaMode lambda_mode = LambdaMode::fixed;
};

// Parsed contents of a config file with [system], [measurement], [sweep]
// and [oracle] sections. lambda_kerr accepts the literal `auto`, which
// resolves to Lambda_0 at load time.
struct Config {
  SystemParams system;
  MeasurementParams measurement;
  std::optional<SweepSpec> sweep;
  TrajectoryConfig oracle;
  bool lambda_auto = false;
};

Config parse_config(std::istream& in);
Config load_config(const std::string& path);

}  // namespace kopa
