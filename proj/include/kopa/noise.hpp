#pragma once

#include <cstdint>
#include <utility>

#include "kopa/linearization.hpp"
#include "kopa/params.hpp"

namespace kopa {

// Zero-frequency coefficients of the uncoupled homodyne current
// I0 = f1 x_in + f2 p_in, with the intermediate nu/Gamma quantities.
struct HomodyneCoefficients {
  double f1 = 0.0;
  double f2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
};

struct NoiseReport {
  double f1 = 0.0, f2 = 0.0;
  double h1 = 0.0, h2 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
  double nu1 = 0.0, nu2 = 0.0;
  double s_ii = 0.0;                // current noise S_I0I0[0]
  double s_zz = 0.0;                // imprecision noise
  double s_ff = 0.0;                // back-action noise
  double s_zf = 0.0;                // cross correlation
  double ql_product = 0.0;          // s_zz s_ff - s_zf^2
  double added_noise_quanta = 0.0;  // k_B T_N / (hbar w) lower bound
  double chi_if = 0.0;              // forward gain
};

HomodyneCoefficients homodyne_coefficients(const LinearizedSystem& lin, double kappa,
                                           double phi_h);

// Force coefficients F = h1 x_in + h2 p_in at w = 0.
std::pair<double, double> backaction_coefficients(const LinearizedSystem& lin, double kappa,
                                                  double coupling_a, double n_s);

// Vacuum quadrature inputs carry symmetrized spectral density 1/2, hence
// the 1/2 in the quadratic forms below.
double current_noise_zero(double f1, double f2);
double backaction_noise(double h1, double h2);

double imprecision_noise(double s_ii, double chi_if);
double cross_correlation(double f1, double f2, double h1, double h2, double chi_if);

double quantum_limit_product(double s_zz, double s_ff, double s_zf);

// Added-noise temperature bound sqrt(s_zz s_ff - re^2) - im, hbar = 1.
double added_noise_bound(double s_zz, double s_ff, double s_zf_real, double s_zf_imag);

// Full zero-frequency noise pipeline for one configuration. ql_product is
// evaluated through the Lagrange identity (f1 h2 - f2 h1)^2 / (2 chi)^2,
// which is algebraically identical to s_zz s_ff - s_zf^2 but free of the
// catastrophic cancellation of the direct difference.
NoiseReport noise_report(const SystemParams& p, const MeasurementParams& meas,
                         const LinearizedSystem& lin, double n_s);

// Random sampling of stable real-alpha configurations (Lambda = Lambda_0)
// verifying the quarter identity.
struct QlCheckSummary {
  int requested = 0;
  int evaluated = 0;
  int skipped = 0;
  double max_rel_deviation = 0.0;
  double max_added_noise_deviation = 0.0;
};

QlCheckSummary ql_check(int n_samples, std::uint64_t seed);

}  // namespace kopa
