#include "kopa/params.hpp"

#include <cmath>
#include <numbers>

namespace kopa {

const SystemParams& validate(const SystemParams& p) {
  const double fields[] = {p.delta, p.g_opa, p.theta, p.lambda_kerr, p.epsilon, p.kappa};
  const char* names[] = {"delta", "g_opa", "theta", "lambda_kerr", "epsilon", "kappa"};
  for (int i = 0; i < 6; ++i) {
    if (!std::isfinite(fields[i]))
      throw ValidationError(std::string(names[i]) + " must be finite");
  }
  if (p.kappa <= 0.0) throw ValidationError("kappa must be positive");
  if (p.epsilon < 0.0) throw ValidationError("epsilon must be non-negative");
  if (p.g_opa < 0.0) throw ValidationError("g_opa must be non-negative");
  return p;
}

const MeasurementParams& validate(const MeasurementParams& m) {
  if (!std::isfinite(m.coupling_a)) throw ValidationError("coupling_a must be finite");
  if (!std::isfinite(m.phi_h)) throw ValidationError("phi_h must be finite");
  if (m.coupling_a <= 0.0) throw ValidationError("coupling_a must be positive");
  if (m.phi_h < 0.0 || m.phi_h >= 2.0 * std::numbers::pi)
    throw ValidationError("phi_h must lie in [0, 2*pi)");
  return m;
}

double lambda_for_real_alpha(double delta, double g_opa, double kappa, double epsilon) {
  if (epsilon == 0.0)
    throw ValidationError("lambda_for_real_alpha requires epsilon > 0");
  const double w = 4.0 * g_opa - kappa;
  return -delta * w * w / (8.0 * epsilon * epsilon);
}

}  // namespace kopa
