#pragma once

#include <numbers>

#include "kopa/errors.hpp"

namespace kopa {

// All rates and frequencies are dimensionless multiples of a reference
// frequency omega_0, with hbar = 1. Phases are carried explicitly by
// theta and phi_h; G and epsilon are non-negative by convention.
struct SystemParams {
  double delta = 0.0;        // detuning Delta = omega_d - omega_c
  double g_opa = 0.0;        // OPA gain coefficient G
  double theta = 0.0;        // OPA pump phase [rad]
  double lambda_kerr = 0.0;  // Kerr coefficient Lambda
  double epsilon = 0.0;      // drive strength
  double kappa = 1.0;        // cavity decay rate
};

struct MeasurementParams {
  double coupling_a = 1.0;                       // signal-detector coupling A
  double phi_h = std::numbers::pi / 2.0;         // homodyne reference phase [rad]
};

// Returns the input unchanged; throws ValidationError naming the first
// violated invariant.
const SystemParams& validate(const SystemParams& p);
const MeasurementParams& validate(const MeasurementParams& m);

// Kerr coefficient Lambda_0 = -Delta (4G - kappa)^2 / (8 epsilon^2) that
// makes the steady-state amplitude real.
double lambda_for_real_alpha(double delta, double g_opa, double kappa, double epsilon);

}  // namespace kopa
