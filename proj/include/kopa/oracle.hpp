#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kopa/linearization.hpp"
#include "kopa/params.hpp"

namespace kopa {

// Time-domain integration settings. For stochastic runs, drive_amp scales
// the vacuum noise increments (0 gives a noiseless run); for deterministic
// runs it is the probe amplitude.
struct TrajectoryConfig {
  double dt = 1e-4;        // step [1/omega_0]
  double duration = 10.0;  // total integration time
  std::uint64_t seed = 1;
  double drive_omega = 0.0;
  double drive_amp = 1.0;
  int segments = 64;       // PSD averaging segments (50% overlap)
};

// Enforces dt < 0.1 / fastest rate and duration >= 20 / |Re lambda_slow|.
void validate_trajectory(const TrajectoryConfig& cfg, const LinearizedSystem& lin,
                         double kappa);

// Drives x_in with a classical sinusoid, integrates the linearized system
// with fixed-step RK4, least-squares fits the steady sinusoid of
// x_out = sqrt(kappa) x + x_in over the second half, and returns the
// squared amplitude ratio. Cross-checks g[w] = |gx[w]|^2.
double time_domain_gain(const LinearizedSystem& lin, double kappa,
                        const TrajectoryConfig& cfg);

// Integrates the linearized system with white-noise quadrature inputs
// (symmetrized spectral density 1/2 each) using an exact exponential step
// for piecewise-constant noise, and estimates the symmetrized PSD of the
// homodyne current by Hann-windowed, 50%-overlap segment averaging.
// Returns the PSD averaged over the lowest decade of resolved frequencies.
double stochastic_current_psd(const LinearizedSystem& lin, double kappa, double phi_h,
                              const TrajectoryConfig& cfg);

// Sign-change scan of the photon-number polynomial over a geometric grid on
// [1e-6, n_max] with bisection refinement. Independent of the companion-
// matrix solver.
std::vector<double> brute_force_roots(const SystemParams& p, double n_max = 1e12);

// Deterministic mean-field amplitude: integrates the full nonlinear
// equation of motion (noise dropped) from alpha(0) = 0.
std::complex<double> mean_field_alpha(const SystemParams& p, double duration, double dt);

// Name of the RNG recorded in oracle output metadata.
const char* oracle_rng_name();

}  // namespace kopa
