#include "kopa/linearization.hpp"

#include <cmath>
#include <tuple>

namespace kopa {

std::pair<std::complex<double>, std::complex<double>> drift_eigenvalues(double m11, double m12,
                                                                        double m21, double m22) {
  const double half_trace = 0.5 * (m11 + m22);
  const double K = (m11 - m22) * (m11 - m22) + 4.0 * m12 * m21;
  if (K >= 0.0) {
    const double s = 0.5 * std::sqrt(K);
    return {std::complex<double>(half_trace + s, 0.0),
            std::complex<double>(half_trace - s, 0.0)};
  }
  const double s = 0.5 * std::sqrt(-K);
  return {std::complex<double>(half_trace, s), std::complex<double>(half_trace, -s)};
}

LinearizedSystem from_entries(double m11, double m12, double m21, double m22) {
  LinearizedSystem lin;
  lin.m11 = m11;
  lin.m12 = m12;
  lin.m21 = m21;
  lin.m22 = m22;
  lin.discriminant = (m11 - m22) * (m11 - m22) + 4.0 * m12 * m21;
  std::tie(lin.eig1, lin.eig2) = drift_eigenvalues(m11, m12, m21, m22);
  lin.stable = lin.eig1.real() < 0.0 && lin.eig2.real() < 0.0;
  return lin;
}

LinearizedSystem drift_matrix(const SystemParams& p, double n_s) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  const double m11 = -p.kappa / 2.0 + 2.0 * p.g_opa * c;
  const double m12 = -(p.delta + 2.0 * p.lambda_kerr * n_s - 2.0 * p.g_opa * s);
  const double m21 = p.delta + 6.0 * p.lambda_kerr * n_s + 2.0 * p.g_opa * s;
  const double m22 = -(p.kappa / 2.0 + 2.0 * p.g_opa * c);
  return from_entries(m11, m12, m21, m22);
}

LinearizedSystem build_m_matrix(const SystemParams& p, double n_s) {
  if (n_s < 0.0) throw PhysicsError("linearization requires n_s >= 0");
  if (p.theta == 0.0) {
    const double shift = std::abs(p.delta + 2.0 * p.lambda_kerr * n_s);
    if (shift > 1e-6 * std::max(std::abs(p.delta), 1.0))
      throw PhysicsError("linearization invalid: operating point has non-real alpha");
  }
  return drift_matrix(p, n_s);
}

bool linearization_regime_ok(double n_s) { return n_s >= 100.0; }

bool is_stable(const LinearizedSystem& lin) {
  return lin.eig1.real() < 0.0 && lin.eig2.real() < 0.0;
}

}  // namespace kopa
