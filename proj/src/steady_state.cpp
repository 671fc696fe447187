#include "kopa/steady_state.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "kopa/linearization.hpp"

namespace kopa {

namespace {

double poly_eval(std::span<const double> a, double x) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double poly_deriv_eval(std::span<const double> a, double x) {
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * a[k];
  return acc;
}

// Newton iterations on the real axis; returns the polished abscissa.
double polish_root(std::span<const double> a, double x) {
  for (int it = 0; it < 60; ++it) {
    const double f = poly_eval(a, x);
    const double df = poly_deriv_eval(a, x);
    if (df == 0.0) break;
    const double step = f / df;
    const double next = x - step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

bool alpha_real_at(const SystemParams& p, double n_bar) {
  return std::abs(p.delta + 2.0 * p.lambda_kerr * n_bar) <=
         1e-6 * std::max(std::abs(p.delta), 1.0);
}

}  // namespace

QuinticCoeffs quintic_coefficients(const SystemParams& p) {
  if (p.theta != 0.0)
    throw ValidationError("steady-state polynomial is only available for theta = 0");
  const double d = p.delta, g = p.g_opa, k = p.kappa, e = p.epsilon, l = p.lambda_kerr;
  const double l2 = l * l;
  QuinticCoeffs a{};
  a[5] = 256.0 * l2 * l2;
  a[4] = 512.0 * d * l * l2;
  a[3] = (384.0 * d * d + 32.0 * k * k - 512.0 * g * g) * l2;
  a[2] = (128.0 * d * d * d + 32.0 * d * k * k - 64.0 * e * e * l - 512.0 * g * g * d) * l;
  const double q = 4.0 * d * d + k * k - 16.0 * g * g;
  a[1] = q * q - 64.0 * e * e * d * l;
  const double r = 4.0 * g + k;
  a[0] = -4.0 * e * e * (4.0 * d * d + r * r);
  return a;
}

double quintic_residual_bound(const QuinticCoeffs& a, double n_bar) {
  double amax = 0.0;
  for (double c : a) amax = std::max(amax, std::abs(c));
  return 1e-8 * amax * std::max(1.0, std::pow(n_bar, 5.0));
}

std::vector<double> real_poly_roots(std::span<const double> ascending) {
  double amax = 0.0;
  for (double c : ascending) amax = std::max(amax, std::abs(c));
  if (amax == 0.0) return {};

  // Strip vanishing leading coefficients so the companion matrix is well posed.
  std::size_t deg = ascending.size() - 1;
  while (deg > 0 && std::abs(ascending[deg]) <= 1e-30 * amax) --deg;
  if (deg == 0) return {};
  std::span<const double> a = ascending.subspan(0, deg + 1);

  if (deg == 1) {
    std::vector<double> out{-a[0] / a[1]};
    return out;
  }

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<int>(deg), static_cast<int>(deg));
  for (std::size_t i = 1; i < deg; ++i) comp(static_cast<int>(i), static_cast<int>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    comp(static_cast<int>(i), static_cast<int>(deg - 1)) = -a[i] / a[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);

  std::vector<double> roots;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z))) continue;
    roots.push_back(polish_root(a, z.real()));
  }
  std::sort(roots.begin(), roots.end());
  // Conjugate pairs with tiny imaginary parts collapse onto one real root.
  std::vector<double> unique;
  for (double r : roots) {
    if (!unique.empty() && std::abs(r - unique.back()) <= 1e-8 * std::max(1.0, std::abs(r)))
      continue;
    unique.push_back(r);
  }
  return unique;
}

std::complex<double> steady_alpha(const SystemParams& p, double n_bar) {
  const double shifted = p.delta + 2.0 * n_bar * p.lambda_kerr;
  const double den = p.kappa * p.kappa - 16.0 * p.g_opa * p.g_opa + 4.0 * shifted * shifted;
  const double scale = std::max({p.kappa * p.kappa, 16.0 * p.g_opa * p.g_opa,
                                 4.0 * shifted * shifted, 1e-300});
  if (std::abs(den) <= 1e-12 * scale)
    throw PhysicsError("singular operating point: steady-state denominator vanishes");
  const std::complex<double> num(4.0 * p.g_opa + p.kappa,
                                 2.0 * p.delta + 4.0 * p.lambda_kerr * n_bar);
  const std::complex<double> alpha = 2.0 * p.epsilon * num / den;
  if (std::abs(std::norm(alpha) - n_bar) > 1e-8 * std::max(1.0, std::abs(n_bar)))
    throw PhysicsError("stale root: |alpha|^2 inconsistent with n_bar");
  return alpha;
}

namespace {

std::vector<RootInfo> analyze_roots(const SystemParams& p) {
  validate(p);
  std::vector<RootInfo> infos;
  if (p.epsilon == 0.0) {
    // Undriven cavity: the polynomial degenerates (A0 = 0) but the only
    // amplitude consistent with Eq. of motion is alpha = 0.
    if (p.theta != 0.0)
      throw ValidationError("steady-state polynomial is only available for theta = 0");
    RootInfo info;
    info.n_bar = 0.0;
    info.residual = 0.0;
    info.physical = true;
    info.stable = drift_matrix(p, 0.0).stable;
    info.alpha_real = alpha_real_at(p, 0.0);
    infos.push_back(info);
    return infos;
  }

  const QuinticCoeffs a = quintic_coefficients(p);
  for (double r : real_poly_roots(std::span<const double>(a))) {
    double n = r;
    if (n < 0.0 && n >= -1e-12 * std::max(1.0, std::abs(n))) n = 0.0;
    RootInfo info;
    info.n_bar = n;
    info.residual = std::abs(poly_eval(std::span<const double>(a), n));
    if (info.residual > quintic_residual_bound(a, n)) continue;
    info.physical = n >= 0.0;
    info.stable = info.physical && drift_matrix(p, n).stable;
    info.alpha_real = alpha_real_at(p, n);
    infos.push_back(info);
  }
  return infos;
}

}  // namespace

SteadyState solve_photon_number(const SystemParams& p) {
  SteadyState ss;
  ss.roots = analyze_roots(p);
  int n_physical = 0, n_stable = 0;
  const RootInfo* selected = nullptr;
  for (const RootInfo& r : ss.roots) {
    if (!r.physical) continue;
    ++n_physical;
    if (r.stable) {
      ++n_stable;
      selected = &r;
    }
  }
  if (n_physical == 0) throw PhysicsError("no physical steady-state root");
  ss.single_valued = n_stable == 1;
  if (ss.single_valued) {
    ss.n_s = selected->n_bar;
    ss.alpha = p.epsilon == 0.0 ? std::complex<double>{0.0, 0.0} : steady_alpha(p, ss.n_s);
  } else {
    ss.n_s = std::numeric_limits<double>::quiet_NaN();
    ss.alpha = {std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()};
  }
  return ss;
}

int classify_multistability(const SystemParams& p) {
  int count = 0;
  for (const RootInfo& r : analyze_roots(p))
    if (r.physical && r.stable) ++count;
  return count;
}

}  // namespace kopa
