#pragma once

#include <complex>
#include <utility>

#include "kopa/params.hpp"

namespace kopa {

// Linearized fluctuation dynamics d/dt (x, p) = M (x, p) + noise.
// The trace obeys m11 + m22 = -kappa exactly.
struct LinearizedSystem {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;
  double discriminant = 0.0;  // K = (m11 - m22)^2 + 4 m12 m21
  std::complex<double> eig1{0.0, 0.0};
  std::complex<double> eig2{0.0, 0.0};
  bool stable = false;
};

// Eigenvalues (m11 + m22)/2 +- sqrt(K)/2; complex pair when K < 0.
std::pair<std::complex<double>, std::complex<double>> drift_eigenvalues(double m11, double m12,
                                                                        double m21, double m22);

// Assemble a LinearizedSystem from raw matrix entries (spectrum and
// stability populated).
LinearizedSystem from_entries(double m11, double m12, double m21, double m22);

// Drift matrix at the given photon number, no operating-point checks.
LinearizedSystem drift_matrix(const SystemParams& p, double n_s);

// As drift_matrix, but enforces the real-alpha operating point the entry
// formulas assume (for theta = 0: |Delta + 2 Lambda n_s| <= 1e-6 max(|Delta|,1))
// and n_s >= 0. Throws PhysicsError on violation.
LinearizedSystem build_m_matrix(const SystemParams& p, double n_s);

// The linearization assumes n_s >> 1; callers may warn below this.
bool linearization_regime_ok(double n_s);

// True iff both eigenvalues have strictly negative real part.
bool is_stable(const LinearizedSystem& lin);

}  // namespace kopa
