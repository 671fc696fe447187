#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "kopa/params.hpp"

namespace kopa {

// Coefficients A0..A5 (ascending powers of n) of the steady-state
// photon-number polynomial, valid for theta = 0.
using QuinticCoeffs = std::array<double, 6>;

struct RootInfo {
  double n_bar = 0.0;      // photon-number candidate
  double residual = 0.0;   // |P(n_bar)|
  bool physical = false;   // n_bar >= 0
  bool stable = false;     // drift matrix at this root has det > 0
  bool alpha_real = false; // |Delta + 2 Lambda n_bar| within tolerance (theta = 0)
};

struct SteadyState {
  std::complex<double> alpha{0.0, 0.0};  // selected coherent amplitude
  double n_s = 0.0;                      // selected mean photon number
  std::vector<RootInfo> roots;           // every real root, ascending
  bool single_valued = false;            // exactly one stable physical root
};

QuinticCoeffs quintic_coefficients(const SystemParams& p);

// Residual acceptance bound for a claimed root of the given polynomial.
double quintic_residual_bound(const QuinticCoeffs& a, double n_bar);

// All real roots of a real polynomial given in ascending coefficient order.
// Leading coefficients below 1e-30 * max|a_i| are stripped; eigenvalues of
// the companion matrix are Newton-polished on the real axis and deduplicated.
std::vector<double> real_poly_roots(std::span<const double> ascending);

// Coherent amplitude for a given photon-number root.
std::complex<double> steady_alpha(const SystemParams& p, double n_bar);

// Full steady-state solve: roots, per-root stability, selection when the
// configuration is single-valued. Throws PhysicsError when no physical root
// exists and ValidationError for theta != 0.
SteadyState solve_photon_number(const SystemParams& p);

// Number of stable physical roots (0..3).
int classify_multistability(const SystemParams& p);

}  // namespace kopa
