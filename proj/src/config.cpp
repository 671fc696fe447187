#include "kopa/config.hpp"

#include <fstream>
#include <sstream>

namespace kopa {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config: invalid numeric value for `" + key + "`: " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config: invalid integer value for `" + key + "`: " + value);
  }
}

}  // namespace

Config parse_config(std::istream& in) {
  Config cfg;
  std::string section;
  std::string line;
  bool have_sweep = false;
  SweepSpec sweep;

  while (std::getline(in, line)) {
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError("config: malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "measurement" && section != "sweep" &&
          section != "oracle")
        throw ValidationError("config: unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config: expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ValidationError("config: key `" + key + "` outside any section");

    if (section == "system") {
      if (key == "delta") cfg.system.delta = parse_number(key, value);
      else if (key == "g_opa") cfg.system.g_opa = parse_number(key, value);
      else if (key == "theta") cfg.system.theta = parse_number(key, value);
      else if (key == "lambda_kerr") {
        if (value == "auto") cfg.lambda_auto = true;
        else cfg.system.lambda_kerr = parse_number(key, value);
      }
      else if (key == "epsilon") cfg.system.epsilon = parse_number(key, value);
      else if (key == "kappa") cfg.system.kappa = parse_number(key, value);
      else throw ValidationError("config: unknown key `" + key + "` in [system]");
    } else if (section == "measurement") {
      if (key == "coupling_a") cfg.measurement.coupling_a = parse_number(key, value);
      else if (key == "phi_h") cfg.measurement.phi_h = parse_number(key, value);
      else throw ValidationError("config: unknown key `" + key + "` in [measurement]");
    } else if (section == "sweep") {
      have_sweep = true;
      if (key == "variable") sweep.variable = value;
      else if (key == "start") sweep.start = parse_number(key, value);
      else if (key == "stop") sweep.stop = parse_number(key, value);
      else if (key == "count") sweep.count = parse_int(key, value);
      else if (key == "lambda_mode") {
        if (value == "fixed") sweep.lambda_mode = SweepSpec::LambdaMode::fixed;
        else if (value == "auto_real_alpha")
          sweep.lambda_mode = SweepSpec::LambdaMode::auto_real_alpha;
        else throw ValidationError("config: lambda_mode must be fixed or auto_real_alpha");
      }
      else throw ValidationError("config: unknown key `" + key + "` in [sweep]");
    } else {  // oracle
      if (key == "dt") cfg.oracle.dt = parse_number(key, value);
      else if (key == "duration") cfg.oracle.duration = parse_number(key, value);
      else if (key == "seed") cfg.oracle.seed = static_cast<std::uint64_t>(parse_number(key, value));
      else if (key == "drive_omega") cfg.oracle.drive_omega = parse_number(key, value);
      else if (key == "drive_amp") cfg.oracle.drive_amp = parse_number(key, value);
      else if (key == "segments") cfg.oracle.segments = parse_int(key, value);
      else throw ValidationError("config: unknown key `" + key + "` in [oracle]");
    }
  }

  if (cfg.lambda_auto)
    cfg.system.lambda_kerr = lambda_for_real_alpha(cfg.system.delta, cfg.system.g_opa,
                                                   cfg.system.kappa, cfg.system.epsilon);
  validate(cfg.system);
  validate(cfg.measurement);
  if (have_sweep) {
    static const char* allowed[] = {"kappa", "g_opa", "delta", "epsilon", "lambda_kerr", "phi_h"};
    bool ok = false;
    for (const char* v : allowed) ok = ok || sweep.variable == v;
    if (!ok) throw ValidationError("config: unknown sweep variable `" + sweep.variable + "`");
    if (sweep.count < 2) throw ValidationError("config: sweep count must be >= 2");
    if (!(sweep.start < sweep.stop))
      throw ValidationError("config: sweep requires start < stop");
    cfg.sweep = sweep;
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config file: " + path);
  return parse_config(f);
}

}  // namespace kopa
