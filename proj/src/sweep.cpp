#include "kopa/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "kopa/noise.hpp"
#include "kopa/response.hpp"
#include "kopa/steady_state.hpp"

namespace kopa {

namespace {

SweepRow evaluate_point(const Config& cfg, const SweepSpec& sweep, double value) {
  SweepRow row;
  row.value = value;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.n_s = row.g0 = row.ql_product = nan;

  SystemParams p = cfg.system;
  MeasurementParams meas = cfg.measurement;
  if (sweep.variable == "kappa") p.kappa = value;
  else if (sweep.variable == "g_opa") p.g_opa = value;
  else if (sweep.variable == "delta") p.delta = value;
  else if (sweep.variable == "epsilon") p.epsilon = value;
  else if (sweep.variable == "lambda_kerr") p.lambda_kerr = value;
  else if (sweep.variable == "phi_h") meas.phi_h = value;

  try {
    if (sweep.lambda_mode == SweepSpec::LambdaMode::auto_real_alpha)
      p.lambda_kerr = lambda_for_real_alpha(p.delta, p.g_opa, p.kappa, p.epsilon);
    validate(p);
    validate(meas);

    const SteadyState ss = solve_photon_number(p);
    int n_stable = 0;
    for (const RootInfo& r : ss.roots)
      if (r.physical && r.stable) ++n_stable;
    row.n_stable_roots = n_stable;
    row.single_valued = ss.single_valued;
    if (!ss.single_valued) {
      row.status = n_stable == 0 ? "unstable" : "multistable";
      return row;
    }
    row.n_s = ss.n_s;

    const LinearizedSystem lin = build_m_matrix(p, ss.n_s);
    row.stable = lin.stable;
    if (!lin.stable) {
      row.status = "unstable";
      return row;
    }
    row.g0 = std::norm(quadrature_gains(lin, p.kappa, 0.0).first);
    try {
      row.ql_product = noise_report(p, meas, lin, ss.n_s).ql_product;
    } catch (const PhysicsError&) {
      // no transduction at this homodyne phase; ql undefined, point still valid
    }
    row.status = "ok";
  } catch (const ValidationError&) {
    row.status = "invalid";
  } catch (const PhysicsError& err) {
    row.status = std::string(err.what()).find("singular") != std::string::npos
                     ? "singular"
                     : "no-steady-state";
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const Config& cfg, const SweepSpec& sweep) {
  const int n = sweep.count;
  std::vector<SweepRow> rows(static_cast<std::size_t>(n));
  const double step = (sweep.stop - sweep.start) / (n - 1);

  std::atomic<int> next{0};
  const unsigned n_threads =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        rows[static_cast<std::size_t>(i)] =
            evaluate_point(cfg, sweep, sweep.start + i * step);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace kopa
