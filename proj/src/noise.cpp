#include "kopa/noise.hpp"

#include <cmath>
#include <random>

#include "kopa/response.hpp"
#include "kopa/steady_state.hpp"

namespace kopa {

HomodyneCoefficients homodyne_coefficients(const LinearizedSystem& lin, double kappa,
                                           double phi_h) {
  const double J0 = j_of_omega(lin, 0.0).real();
  if (std::abs(J0) <= 1e-12 * kappa * kappa)
    throw PhysicsError("resonance singularity: J[0] vanishes");
  HomodyneCoefficients c;
  c.nu1 = J0 - kappa * lin.m22;
  c.nu2 = J0 - kappa * lin.m11;
  c.gamma1 = c.nu1 * std::cos(phi_h) + kappa * lin.m21 * std::sin(phi_h);
  c.gamma2 = c.nu2 * std::sin(phi_h) + kappa * lin.m12 * std::cos(phi_h);
  const double sk = std::sqrt(kappa);
  c.f1 = sk * c.gamma1 / J0;
  c.f2 = sk * c.gamma2 / J0;
  return c;
}

std::pair<double, double> backaction_coefficients(const LinearizedSystem& lin, double kappa,
                                                  double coupling_a, double n_s) {
  if (n_s <= 0.0) throw PhysicsError("back-action coefficients require n_s > 0");
  const double J0 = j_of_omega(lin, 0.0).real();
  if (std::abs(J0) <= 1e-12 * kappa * kappa)
    throw PhysicsError("resonance singularity: J[0] vanishes");
  const double pre = coupling_a * std::sqrt(2.0 * n_s * kappa);
  return {-pre * lin.m22 / J0, pre * lin.m12 / J0};
}

double current_noise_zero(double f1, double f2) { return 0.5 * (f1 * f1 + f2 * f2); }

double backaction_noise(double h1, double h2) { return 0.5 * (h1 * h1 + h2 * h2); }

double imprecision_noise(double s_ii, double chi_if) {
  if (chi_if == 0.0)
    throw PhysicsError("no transduction: chi_IF = 0, imprecision noise diverges");
  return s_ii / (chi_if * chi_if);
}

double cross_correlation(double f1, double f2, double h1, double h2, double chi_if) {
  if (chi_if == 0.0) throw PhysicsError("no transduction: chi_IF = 0");
  return (f1 * h1 + f2 * h2) / (2.0 * chi_if);
}

double quantum_limit_product(double s_zz, double s_ff, double s_zf) {
  return s_zz * s_ff - s_zf * s_zf;
}

double added_noise_bound(double s_zz, double s_ff, double s_zf_real, double s_zf_imag) {
  const double disc = s_zz * s_ff - s_zf_real * s_zf_real;
  if (disc < 0.0)
    throw PhysicsError("inconsistent spectra: s_zz s_ff < (Re s_zf)^2");
  return std::sqrt(disc) - s_zf_imag;
}

NoiseReport noise_report(const SystemParams& p, const MeasurementParams& meas,
                         const LinearizedSystem& lin, double n_s) {
  NoiseReport rep;
  const HomodyneCoefficients hc = homodyne_coefficients(lin, p.kappa, meas.phi_h);
  rep.f1 = hc.f1;
  rep.f2 = hc.f2;
  rep.gamma1 = hc.gamma1;
  rep.gamma2 = hc.gamma2;
  rep.nu1 = hc.nu1;
  rep.nu2 = hc.nu2;
  std::tie(rep.h1, rep.h2) = backaction_coefficients(lin, p.kappa, meas.coupling_a, n_s);

  rep.chi_if = forward_gain_zero(p, meas, lin, n_s);
  const double chi_scale = meas.coupling_a * p.kappa * std::sqrt(2.0 * n_s) *
                           std::hypot(lin.m11, lin.m12) /
                           std::abs(j_of_omega(lin, 0.0).real());
  if (std::abs(rep.chi_if) <= 1e-14 * chi_scale)
    throw PhysicsError("no transduction: chi_IF = 0 at this homodyne phase");

  rep.s_ii = current_noise_zero(rep.f1, rep.f2);
  rep.s_zz = imprecision_noise(rep.s_ii, rep.chi_if);
  rep.s_ff = backaction_noise(rep.h1, rep.h2);
  rep.s_zf = cross_correlation(rep.f1, rep.f2, rep.h1, rep.h2, rep.chi_if);
  // Lagrange identity: (f1^2+f2^2)(h1^2+h2^2) - (f1 h1 + f2 h2)^2 = (f1 h2 - f2 h1)^2.
  const double w = (rep.f1 * rep.h2 - rep.f2 * rep.h1) / (2.0 * rep.chi_if);
  rep.ql_product = w * w;
  rep.added_noise_quanta = std::sqrt(rep.ql_product);
  return rep;
}

QlCheckSummary ql_check(int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw ValidationError("ql_check requires n_samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  QlCheckSummary summary;
  summary.requested = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    SystemParams p;
    p.delta = -50.0 + 100.0 * u01(rng);
    p.g_opa = 200.0 * u01(rng);
    p.epsilon = 100.0 + 9900.0 * u01(rng);
    const double gap = 1.0 + 999.0 * u01(rng);
    p.kappa = 4.0 * p.g_opa + gap;
    p.lambda_kerr = lambda_for_real_alpha(p.delta, p.g_opa, p.kappa, p.epsilon);
    MeasurementParams meas;
    meas.coupling_a = 0.1 + 10.0 * u01(rng);
    meas.phi_h = 2.0 * std::numbers::pi * u01(rng);
    // Phases too close to the chi_IF zero make the referred spectra blow up.
    if (std::abs(std::sin(meas.phi_h)) < 1e-2) {
      ++summary.skipped;
      continue;
    }
    try {
      const SteadyState ss = solve_photon_number(p);
      if (!ss.single_valued) {
        ++summary.skipped;
        continue;
      }
      const LinearizedSystem lin = build_m_matrix(p, ss.n_s);
      if (!lin.stable) {
        ++summary.skipped;
        continue;
      }
      const NoiseReport rep = noise_report(p, meas, lin, ss.n_s);
      summary.max_rel_deviation =
          std::max(summary.max_rel_deviation, std::abs(rep.ql_product - 0.25) / 0.25);
      summary.max_added_noise_deviation =
          std::max(summary.max_added_noise_deviation,
                   std::abs(rep.added_noise_quanta - 0.5) / 0.5);
      ++summary.evaluated;
    } catch (const PhysicsError&) {
      ++summary.skipped;
    }
  }
  return summary;
}

}  // namespace kopa
