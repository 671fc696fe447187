#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "kopa/linearization.hpp"
#include "kopa/params.hpp"

namespace kopa {

struct ResponseSpectrum {
  Eigen::ArrayXd omegas;
  Eigen::ArrayXcd j_vals;
  Eigen::ArrayXcd gx;
  Eigen::ArrayXcd gp;
  Eigen::ArrayXd gain;  // |gx|^2
};

// J[w] = m12 m21 + (i m11 + w)(i m22 + w); J[0] = -det(M).
std::complex<double> j_of_omega(const LinearizedSystem& lin, double omega);

// Reflection transfer functions gx = 1 + kappa (i w - m22)/J, gp = kappa m12 / J.
// Throws PhysicsError when |J| <= 1e-12 kappa^2.
std::pair<std::complex<double>, std::complex<double>> quadrature_gains(
    const LinearizedSystem& lin, double kappa, double omega);

// Gain g[w] = |gx[w]|^2 over a frequency grid; requires a stable system.
ResponseSpectrum gain_spectrum(const SystemParams& p, const LinearizedSystem& lin,
                               const Eigen::ArrayXd& omegas);

// Smallest w > 0 with g[w] <= g[0]/2, linearly interpolated between grid
// points. The grid must start at w = 0 with g[0] the grid maximum.
double bandwidth_3db(const ResponseSpectrum& spec);

// Zero-frequency forward gain chi_IF[0] = A kappa sqrt(2 n_s)
// (m11 sin phi_h - m12 cos phi_h) / J[0].
double forward_gain_zero(const SystemParams& p, const MeasurementParams& meas,
                         const LinearizedSystem& lin, double n_s);

// Uniform grid helper.
Eigen::ArrayXd linear_grid(double start, double stop, int count);

}  // namespace kopa
