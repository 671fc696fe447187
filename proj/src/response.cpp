#include "kopa/response.hpp"

#include <cmath>
#include <sstream>

namespace kopa {

std::complex<double> j_of_omega(const LinearizedSystem& lin, double omega) {
  const std::complex<double> i(0.0, 1.0);
  return lin.m12 * lin.m21 + (i * lin.m11 + omega) * (i * lin.m22 + omega);
}

std::pair<std::complex<double>, std::complex<double>> quadrature_gains(
    const LinearizedSystem& lin, double kappa, double omega) {
  const std::complex<double> J = j_of_omega(lin, omega);
  if (std::abs(J) <= 1e-12 * kappa * kappa)
    throw PhysicsError("resonance singularity: J[omega] vanishes");
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> gx = 1.0 + kappa * (i * omega - lin.m22) / J;
  const std::complex<double> gp = kappa * lin.m12 / J;
  return {gx, gp};
}

ResponseSpectrum gain_spectrum(const SystemParams& p, const LinearizedSystem& lin,
                               const Eigen::ArrayXd& omegas) {
  if (!lin.stable) {
    std::ostringstream msg;
    msg << "gain spectrum of an unstable system (eigenvalues " << lin.eig1 << ", " << lin.eig2
        << ")";
    throw PhysicsError(msg.str());
  }
  ResponseSpectrum spec;
  spec.omegas = omegas;
  spec.j_vals.resize(omegas.size());
  spec.gx.resize(omegas.size());
  spec.gp.resize(omegas.size());
  spec.gain.resize(omegas.size());
  for (Eigen::Index k = 0; k < omegas.size(); ++k) {
    spec.j_vals(k) = j_of_omega(lin, omegas(k));
    auto [gx, gp] = quadrature_gains(lin, p.kappa, omegas(k));
    spec.gx(k) = gx;
    spec.gp(k) = gp;
    spec.gain(k) = std::norm(gx);
  }
  return spec;
}

double bandwidth_3db(const ResponseSpectrum& spec) {
  if (spec.omegas.size() < 2 || spec.omegas(0) != 0.0)
    throw ValidationError("bandwidth_3db requires a grid starting at omega = 0");
  const double g0 = spec.gain(0);
  if (spec.gain.maxCoeff() > g0)
    throw ValidationError("bandwidth_3db requires g[0] to be the grid maximum");
  const double half = g0 / 2.0;
  for (Eigen::Index k = 1; k < spec.omegas.size(); ++k) {
    if (spec.gain(k) <= half) {
      const double g_lo = spec.gain(k - 1), g_hi = spec.gain(k);
      const double t = (half - g_lo) / (g_hi - g_lo);
      return spec.omegas(k - 1) + t * (spec.omegas(k) - spec.omegas(k - 1));
    }
  }
  throw ValidationError("frequency grid too narrow: gain never drops to half maximum");
}

double forward_gain_zero(const SystemParams& p, const MeasurementParams& meas,
                         const LinearizedSystem& lin, double n_s) {
  if (n_s <= 0.0) throw PhysicsError("forward gain requires n_s > 0");
  const std::complex<double> J0 = j_of_omega(lin, 0.0);
  if (std::abs(J0) <= 1e-12 * p.kappa * p.kappa)
    throw PhysicsError("resonance singularity: J[0] vanishes");
  return meas.coupling_a * p.kappa * std::sqrt(2.0 * n_s) *
         (lin.m11 * std::sin(meas.phi_h) - lin.m12 * std::cos(meas.phi_h)) / J0.real();
}

Eigen::ArrayXd linear_grid(double start, double stop, int count) {
  if (count < 2 || !(start < stop))
    throw ValidationError("grid requires count >= 2 and start < stop");
  return Eigen::ArrayXd::LinSpaced(count, start, stop);
}

}  // namespace kopa
