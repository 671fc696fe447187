#include "kopa/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "kopa/steady_state.hpp"

namespace kopa {

namespace {

double fastest_rate(const LinearizedSystem& lin, double kappa) {
  return std::max({std::abs(lin.m11), std::abs(lin.m12), std::abs(lin.m21), std::abs(lin.m22),
                   kappa});
}

double slow_decay_rate(const LinearizedSystem& lin) {
  return std::min(std::abs(lin.eig1.real()), std::abs(lin.eig2.real()));
}

Eigen::Matrix2d drift(const LinearizedSystem& lin) {
  Eigen::Matrix2d M;
  M << lin.m11, lin.m12, lin.m21, lin.m22;
  return M;
}

}  // namespace

void validate_trajectory(const TrajectoryConfig& cfg, const LinearizedSystem& lin,
                         double kappa) {
  if (cfg.dt <= 0.0 || cfg.duration <= 0.0)
    throw ValidationError("dt and duration must be positive");
  if (cfg.dt >= 0.1 / fastest_rate(lin, kappa))
    throw ValidationError("dt too coarse: must resolve the fastest rate (dt < 0.1/rate)");
  const double slow = slow_decay_rate(lin);
  if (slow <= 0.0) throw PhysicsError("trajectory integration requires a stable system");
  if (cfg.duration < 20.0 / slow)
    throw ValidationError("duration too short to reach the steady response");
}

double time_domain_gain(const LinearizedSystem& lin, double kappa,
                        const TrajectoryConfig& cfg) {
  if (!lin.stable) throw PhysicsError("time-domain gain of an unstable system");
  validate_trajectory(cfg, lin, kappa);

  const Eigen::Matrix2d M = drift(lin);
  const double sk = std::sqrt(kappa);
  const double w = cfg.drive_omega;
  const double amp = cfg.drive_amp;
  const auto drive = [&](double t) { return amp * std::cos(w * t); };
  const auto rhs = [&](double t, const Eigen::Vector2d& v) -> Eigen::Vector2d {
    return M * v + Eigen::Vector2d(-sk * drive(t), 0.0);
  };

  const long steps = std::lround(cfg.duration / cfg.dt);
  const double h = cfg.dt;
  Eigen::Vector2d v = Eigen::Vector2d::Zero();

  // Least-squares accumulation of x_out against cos/sin of the probe.
  double scc = 0, scs = 0, sss = 0, scy = 0, ssy = 0, syy = 0, sy = 0;
  long n_fit = 0;
  for (long k = 0; k <= steps; ++k) {
    const double t = k * h;
    if (t >= cfg.duration / 2.0) {
      const double y = sk * v(0) + drive(t);
      const double c = std::cos(w * t), s = std::sin(w * t);
      scc += c * c;
      scs += c * s;
      sss += s * s;
      scy += c * y;
      ssy += s * y;
      syy += y * y;
      sy += y;
      ++n_fit;
    }
    if (k == steps) break;
    const Eigen::Vector2d k1 = rhs(t, v);
    const Eigen::Vector2d k2 = rhs(t + h / 2.0, v + h / 2.0 * k1);
    const Eigen::Vector2d k3 = rhs(t + h / 2.0, v + h / 2.0 * k2);
    const Eigen::Vector2d k4 = rhs(t + h, v + h * k3);
    v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  double amp_out_sq, resid_sq;
  if (w == 0.0) {
    const double mean = sy / n_fit;
    amp_out_sq = mean * mean;
    resid_sq = syy / n_fit - mean * mean;
  } else {
    Eigen::Matrix2d G;
    G << scc, scs, scs, sss;
    const Eigen::Vector2d ab = G.ldlt().solve(Eigen::Vector2d(scy, ssy));
    amp_out_sq = ab.squaredNorm();
    resid_sq = (syy - ab(0) * scy - ab(1) * ssy) / n_fit;
  }
  const double scale = std::max(amp_out_sq, amp * amp);
  if (!(resid_sq >= -1e-9 * scale) || resid_sq > 1e-6 * scale)
    throw VerificationError("sinusoid fit did not converge to the steady response");
  return amp_out_sq / (amp * amp);
}

double stochastic_current_psd(const LinearizedSystem& lin, double kappa, double phi_h,
                              const TrajectoryConfig& cfg) {
  if (!lin.stable) throw PhysicsError("stochastic trajectory of an unstable system");
  validate_trajectory(cfg, lin, kappa);
  if (cfg.segments < 1) throw ValidationError("segments must be >= 1");

  const double h = cfg.dt;
  const long steps = std::lround(cfg.duration / h);
  long seg_len = 2 * (steps / (cfg.segments + 1));
  seg_len -= seg_len % 2;
  if (seg_len < 64)
    throw ValidationError("duration too short for requested segments");
  const int n_bins = 10;  // lowest decade of resolved frequencies

  const Eigen::Matrix2d M = drift(lin);
  const Eigen::Matrix2d E = (M * h).exp();
  const Eigen::Matrix2d phi_d = M.inverse() * (E - Eigen::Matrix2d::Identity()) / h;
  const Eigen::Matrix2d psi = M.inverse() * (phi_d - Eigen::Matrix2d::Identity());
  const double sk = std::sqrt(kappa);
  const double cph = std::cos(phi_h), sph = std::sin(phi_h);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * h));

  // Hann window and its power, computed once per segment length.
  std::vector<double> window(static_cast<std::size_t>(seg_len));
  double wsum2 = 0.0;
  for (long k = 0; k < seg_len; ++k) {
    window[static_cast<std::size_t>(k)] =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / seg_len));
    wsum2 += window[static_cast<std::size_t>(k)] * window[static_cast<std::size_t>(k)];
  }

  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  const long burn_in = std::lround(20.0 / slow_decay_rate(lin) / h);
  std::vector<double> buffer(static_cast<std::size_t>(seg_len));
  long filled = 0;
  int seg_done = 0;
  std::vector<double> psd(n_bins, 0.0);

  long total = burn_in + seg_len / 2 * (cfg.segments + 1);
  for (long k = 0; k < total; ++k) {
    const Eigen::Vector2d dW(cfg.drive_amp * gauss(rng), cfg.drive_amp * gauss(rng));
    const Eigen::Vector2d w_in = dW / h;
    // Bin average of the state under piecewise-constant input noise.
    const Eigen::Vector2d xbar = phi_d * x - sk * psi * w_in;
    const double current =
        sk * (cph * (sk * xbar(0) + w_in(0)) + sph * (sk * xbar(1) + w_in(1)));
    x = E * x - sk * phi_d * dW;

    if (k < burn_in) continue;
    buffer[static_cast<std::size_t>(filled++)] = current;
    if (filled < seg_len) continue;

    // Windowed DFT at the lowest bins.
    for (int j = 1; j <= n_bins; ++j) {
      const double dtheta = -2.0 * std::numbers::pi * j / seg_len;
      const std::complex<double> rot(std::cos(dtheta), std::sin(dtheta));
      std::complex<double> ph(1.0, 0.0), acc(0.0, 0.0);
      for (long m = 0; m < seg_len; ++m) {
        acc += window[static_cast<std::size_t>(m)] * buffer[static_cast<std::size_t>(m)] * ph;
        ph *= rot;
      }
      psd[static_cast<std::size_t>(j - 1)] += h * std::norm(acc) / wsum2;
    }
    ++seg_done;
    if (seg_done == cfg.segments) break;
    // 50% overlap: shift the second half down.
    std::copy(buffer.begin() + seg_len / 2, buffer.end(), buffer.begin());
    filled = seg_len / 2;
  }
  if (seg_done < cfg.segments)
    throw ValidationError("duration too short for requested segments");

  double mean = 0.0;
  for (double s : psd) mean += s / seg_done;
  return mean / n_bins;
}

std::vector<double> brute_force_roots(const SystemParams& p, double n_max) {
  const QuinticCoeffs a = quintic_coefficients(p);
  const auto eval = [&](double x) {
    double acc = 0.0;
    for (int k = 5; k >= 0; --k) acc = acc * x + a[static_cast<std::size_t>(k)];
    return acc;
  };

  const int grid_points = 100000;
  const double lo = 1e-6;
  const double ratio = std::pow(n_max / lo, 1.0 / (grid_points - 1));

  std::vector<double> roots;
  double x_prev = lo, f_prev = eval(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double x = lo * std::pow(ratio, i);
    const double f = eval(x);
    if (f_prev == 0.0) {
      roots.push_back(x_prev);
    } else if (f_prev * f < 0.0) {
      double a_lo = x_prev, a_hi = x, f_lo = f_prev;
      for (int it = 0; it < 200 && (a_hi - a_lo) > 1e-12 * a_hi; ++it) {
        const double mid = 0.5 * (a_lo + a_hi);
        const double fm = eval(mid);
        if (fm == 0.0) {
          a_lo = a_hi = mid;
          break;
        }
        if (f_lo * fm < 0.0) {
          a_hi = mid;
        } else {
          a_lo = mid;
          f_lo = fm;
        }
      }
      roots.push_back(0.5 * (a_lo + a_hi));
    }
    x_prev = x;
    f_prev = f;
  }
  if (f_prev == 0.0) roots.push_back(x_prev);
  return roots;
}

std::complex<double> mean_field_alpha(const SystemParams& p, double duration, double dt) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const C opa = 2.0 * p.g_opa * std::exp(i * p.theta);
  const auto rhs = [&](const C& a) {
    return (i * p.delta - p.kappa / 2.0) * a + opa * std::conj(a) +
           2.0 * i * p.lambda_kerr * std::conj(a) * a * a + p.epsilon;
  };
  const long steps = std::lround(duration / dt);
  C a(0.0, 0.0);
  for (long k = 0; k < steps; ++k) {
    const C k1 = rhs(a);
    const C k2 = rhs(a + dt / 2.0 * k1);
    const C k3 = rhs(a + dt / 2.0 * k2);
    const C k4 = rhs(a + dt * k3);
    a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return a;
}

const char* oracle_rng_name() { return "mt19937_64"; }

}  // namespace kopa
