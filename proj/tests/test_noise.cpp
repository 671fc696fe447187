#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "kopa/noise.hpp"
#include "kopa/response.hpp"
#include "kopa/steady_state.hpp"

using namespace kopa;

namespace {

const SystemParams kReference{.delta = -10, .g_opa = 120, .theta = 0, .lambda_kerr = 5e-4,
                              .epsilon = 1000, .kappa = 500};
const double kRefNs = 1e4;

LinearizedSystem reference_lin() { return from_entries(-10, 0, 20, -490); }

LinearizedSystem empty_lin(double kappa) {
  return from_entries(-kappa / 2, 0, 0, -kappa / 2);
}

}  // namespace

TEST_CASE("homodyne coefficients: empty cavity") {
  const double kappa = 2.0;
  for (double phi : {0.3, 1.0, std::numbers::pi / 2}) {
    const HomodyneCoefficients c = homodyne_coefficients(empty_lin(kappa), kappa, phi);
    CHECK(c.f1 == doctest::Approx(-std::sqrt(kappa) * std::cos(phi)).epsilon(1e-12));
    CHECK(c.f2 == doctest::Approx(-std::sqrt(kappa) * std::sin(phi)).epsilon(1e-12));
  }
}

TEST_CASE("homodyne coefficients: reference configuration at phi_h = pi/2") {
  const HomodyneCoefficients c =
      homodyne_coefficients(reference_lin(), 500.0, std::numbers::pi / 2);
  CHECK(c.gamma1 == doctest::Approx(1e4).epsilon(1e-12));
  CHECK(c.gamma2 == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(c.f1 == doctest::Approx(std::sqrt(500.0) * 1e4 / -4900.0).epsilon(1e-12));
  CHECK(c.f2 == doctest::Approx(std::sqrt(500.0) * 100.0 / -4900.0).epsilon(1e-12));
  CHECK(c.f1 == doctest::Approx(-45.63404).epsilon(1e-5));
}

TEST_CASE("f2 vanishes at phi_h = 0 with m12 = m21 = 0") {
  const HomodyneCoefficients c = homodyne_coefficients(empty_lin(2.0), 2.0, 0.0);
  CHECK(c.f2 == 0.0);
}

TEST_CASE("back-action coefficients") {
  auto [h1, h2] = backaction_coefficients(reference_lin(), 500.0, 1.0, kRefNs);
  CHECK(h1 == doctest::Approx(-std::sqrt(1e7) / 10.0).epsilon(1e-12));
  CHECK(h2 == 0.0);

  const double kappa = 2.0, n_s = 50.0;
  auto [e1, e2] = backaction_coefficients(empty_lin(kappa), kappa, 1.0, n_s);
  CHECK(e1 == doctest::Approx(-2.0 * std::sqrt(2.0 * n_s / kappa)).epsilon(1e-12));
  CHECK(e2 == 0.0);
}

TEST_CASE("current noise: vacuum shot noise of the empty cavity is kappa/2") {
  const double kappa = 2.0;
  const HomodyneCoefficients c = homodyne_coefficients(empty_lin(kappa), kappa, 0.7);
  CHECK(current_noise_zero(c.f1, c.f2) == doctest::Approx(kappa / 2.0).epsilon(1e-12));
  CHECK(current_noise_zero(0.0, 0.0) == 0.0);
}

TEST_CASE("current noise: reference value") {
  const HomodyneCoefficients c =
      homodyne_coefficients(reference_lin(), 500.0, std::numbers::pi / 2);
  const double expected = 500.0 * (1e8 + 1e4) / (2.0 * 4900.0 * 4900.0);
  CHECK(current_noise_zero(c.f1, c.f2) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(1041.34).epsilon(1e-5));
}

TEST_CASE("imprecision noise: reference value and scaling in A") {
  MeasurementParams meas;
  const NoiseReport rep = noise_report(kReference, meas, reference_lin(), kRefNs);
  CHECK(rep.s_zz == doctest::Approx(0.050005).epsilon(1e-5));

  meas.coupling_a = 2.0;
  const NoiseReport rep2 = noise_report(kReference, meas, reference_lin(), kRefNs);
  CHECK(rep2.s_zz == doctest::Approx(rep.s_zz / 4.0).epsilon(1e-12));
  CHECK(rep2.s_ii == doctest::Approx(rep.s_ii).epsilon(1e-14));
}

TEST_CASE("imprecision noise diverges without transduction") {
  CHECK_THROWS_AS(imprecision_noise(1.0, 0.0), PhysicsError);
  MeasurementParams meas;
  meas.phi_h = 0.0;  // m12 = 0: chi_IF = 0
  CHECK_THROWS_AS(noise_report(kReference, meas, reference_lin(), kRefNs), PhysicsError);
}

TEST_CASE("imprecision noise: empty cavity closed form kappa/(16 n_s)") {
  const double kappa = 2.0, n_s = 400.0;
  SystemParams p;
  p.kappa = kappa;
  MeasurementParams meas;
  const NoiseReport rep = noise_report(p, meas, empty_lin(kappa), n_s);
  CHECK(rep.s_zz == doctest::Approx(kappa / (16.0 * n_s)).epsilon(1e-12));
}

TEST_CASE("back-action noise: reference value is 5e4 exactly") {
  auto [h1, h2] = backaction_coefficients(reference_lin(), 500.0, 1.0, kRefNs);
  CHECK(backaction_noise(h1, h2) == doctest::Approx(5e4).epsilon(1e-13));
  CHECK(backaction_noise(0.0, 0.0) == 0.0);
}

TEST_CASE("back-action noise agrees with the closed form over random matrices") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double kappa = 0.5 + 20.0 * u01(rng);
    const double m11 = -kappa * u01(rng);
    const LinearizedSystem lin =
        from_entries(m11, -5.0 + 10.0 * u01(rng), -5.0 + 10.0 * u01(rng), -kappa - m11);
    const double J0 = j_of_omega(lin, 0.0).real();
    if (std::abs(J0) < 1e-6) continue;
    const double A = 0.1 + 3.0 * u01(rng), n_s = 1.0 + 1e4 * u01(rng);
    auto [h1, h2] = backaction_coefficients(lin, kappa, A, n_s);
    const double closed =
        A * A * (lin.m12 * lin.m12 + lin.m22 * lin.m22) * n_s * kappa / (J0 * J0);
    CHECK(backaction_noise(h1, h2) == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("cross correlation: reference value is 50 exactly") {
  MeasurementParams meas;
  const NoiseReport rep = noise_report(kReference, meas, reference_lin(), kRefNs);
  CHECK(rep.s_zf == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("cross correlation: empty cavity is cot(phi)/2") {
  const double kappa = 2.0, n_s = 25.0;
  SystemParams p;
  p.kappa = kappa;
  for (double phi : {0.4, 1.0, std::numbers::pi / 2, 2.2}) {
    MeasurementParams meas;
    meas.phi_h = phi;
    const NoiseReport rep = noise_report(p, meas, empty_lin(kappa), n_s);
    CHECK(rep.s_zf == doctest::Approx(0.5 / std::tan(phi)).epsilon(1e-12));
  }
}

TEST_CASE("quantum limit product: reference arithmetic") {
  MeasurementParams meas;
  const NoiseReport rep = noise_report(kReference, meas, reference_lin(), kRefNs);
  CHECK(rep.s_zz * rep.s_ff == doctest::Approx(2500.25).epsilon(1e-12));
  CHECK(quantum_limit_product(rep.s_zz, rep.s_ff, rep.s_zf) ==
        doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep.ql_product == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("quantum limit product: empty cavity trigonometric identity") {
  SystemParams p;
  p.kappa = 2.0;
  for (double phi : {0.3, 0.9, std::numbers::pi / 2, 2.5}) {
    MeasurementParams meas;
    meas.phi_h = phi;
    const NoiseReport rep = noise_report(p, meas, empty_lin(2.0), 100.0);
    CHECK(rep.ql_product == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("trace-constrained bracket identity: both forms agree and the bracket is unity") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double kappa = 0.5 + 20.0 * u01(rng);
    const double m11 = -kappa * u01(rng);
    const double m12 = -5.0 + 10.0 * u01(rng);
    const double m21 = -5.0 + 10.0 * u01(rng);
    const LinearizedSystem lin = from_entries(m11, m12, m21, -kappa - m11);
    if (!lin.stable) continue;
    const double phi = 0.2 + 2.7 * u01(rng);
    const double denom = m12 * std::cos(phi) - m11 * std::sin(phi);
    if (std::abs(denom) < 0.05) continue;
    const double bracket =
        (m12 * std::cos(phi) + (kappa + lin.m22) * std::sin(phi)) / denom;
    CHECK(bracket == doctest::Approx(1.0).epsilon(1e-10));

    SystemParams p;
    p.kappa = kappa;
    MeasurementParams meas;
    meas.phi_h = phi;
    const NoiseReport rep = noise_report(p, meas, lin, 1.0 + 1e4 * u01(rng));
    CHECK(rep.ql_product == doctest::Approx(0.25 * bracket * bracket).epsilon(1e-9));
    CHECK(quantum_limit_product(rep.s_zz, rep.s_ff, rep.s_zf) ==
          doctest::Approx(rep.ql_product).epsilon(1e-6));
  }
}

TEST_CASE("ql product is homodyne-phase independent while the spectra are not") {
  SystemParams p = kReference;
  double prev_szz = -1.0;
  bool szz_varies = false;
  for (double phi = 0.2; phi < std::numbers::pi; phi += 0.3) {
    MeasurementParams meas;
    meas.phi_h = phi;
    const NoiseReport rep = noise_report(p, meas, reference_lin(), kRefNs);
    CHECK(rep.ql_product == doctest::Approx(0.25).epsilon(1e-12));
    if (prev_szz >= 0.0 && std::abs(rep.s_zz - prev_szz) > 1e-9) szz_varies = true;
    prev_szz = rep.s_zz;
  }
  CHECK(szz_varies);
}

TEST_CASE("added noise bound") {
  CHECK(added_noise_bound(0.5, 0.5, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(added_noise_bound(1.0, 1.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(added_noise_bound(0.1, 0.1, 1.0, 0.0), PhysicsError);

  MeasurementParams meas;
  const NoiseReport rep = noise_report(kReference, meas, reference_lin(), kRefNs);
  CHECK(rep.added_noise_quanta == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ql_check samples 1000 configurations within tolerance") {
  const QlCheckSummary s = ql_check(1000, 42);
  CHECK(s.requested == 1000);
  CHECK(s.evaluated >= 500);
  CHECK(s.evaluated + s.skipped == 1000);
  CHECK(s.max_rel_deviation < 1e-9);
  CHECK(s.max_added_noise_deviation < 1e-9);
}

TEST_CASE("ql_check rejects a non-positive sample count") {
  CHECK_THROWS_AS(ql_check(0, 1), ValidationError);
}
