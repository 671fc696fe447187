#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "kopa/config.hpp"
#include "kopa/csv.hpp"
#include "kopa/noise.hpp"
#include "kopa/oracle.hpp"
#include "kopa/response.hpp"
#include "kopa/steady_state.hpp"
#include "kopa/sweep.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kopa;

// Relative --out paths land in $KOPA_OUT_DIR when it is set.
std::string resolve_out(const std::string& out) {
  if (out.empty()) return out;
  const char* dir = std::getenv("KOPA_OUT_DIR");
  std::filesystem::path p(out);
  if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
  return p.string();
}

void emit(const std::string& out, const std::string& text) {
  const std::string path = resolve_out(out);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file: " + path);
  f << text;
}

void warn_linearization(double n_s) {
  if (!linearization_regime_ok(n_s))
    std::cerr << "warning: n_s = " << n_s << " < 100; linearization assumes n_s >> 1\n";
}

// Auto-Lambda_0 breaks down at the parametric oscillation threshold.
void check_opo_threshold(const Config& cfg) {
  if (cfg.lambda_auto &&
      std::abs(cfg.system.kappa - 4.0 * cfg.system.g_opa) < 1e-9 * cfg.system.kappa)
    throw PhysicsError("singular operating point: kappa = 4G with auto Kerr coefficient");
}

json steady_json(const SteadyState& ss) {
  json j;
  j["n_s"] = ss.n_s;
  j["alpha_re"] = ss.alpha.real();
  j["alpha_im"] = ss.alpha.imag();
  j["single_valued"] = ss.single_valued;
  j["roots"] = json::array();
  for (const RootInfo& r : ss.roots) {
    j["roots"].push_back({{"n_bar", r.n_bar},
                          {"residual", r.residual},
                          {"physical", r.physical},
                          {"stable", r.stable},
                          {"alpha_real", r.alpha_real}});
  }
  return j;
}

int run_steady(const Config& cfg, const std::string& out) {
  check_opo_threshold(cfg);
  const SteadyState ss = solve_photon_number(cfg.system);
  if (ss.single_valued) warn_linearization(ss.n_s);
  emit(out, steady_json(ss).dump(2) + "\n");
  return 0;
}

int run_gain_spectrum(const Config& cfg, const std::string& out, double w0, double w1,
                      int count) {
  check_opo_threshold(cfg);
  const SteadyState ss = solve_photon_number(cfg.system);
  if (!ss.single_valued)
    throw PhysicsError("gain spectrum requires a single-valued stable steady state");
  warn_linearization(ss.n_s);
  const LinearizedSystem lin = build_m_matrix(cfg.system, ss.n_s);
  const ResponseSpectrum spec = gain_spectrum(cfg.system, lin, linear_grid(w0, w1, count));

  std::ostringstream csv;
  csv << "omega,re_gx,im_gx,re_gp,im_gp,gain\n";
  for (Eigen::Index k = 0; k < spec.omegas.size(); ++k) {
    csv << fmt17(spec.omegas(k)) << ',' << fmt17(spec.gx(k).real()) << ','
        << fmt17(spec.gx(k).imag()) << ',' << fmt17(spec.gp(k).real()) << ','
        << fmt17(spec.gp(k).imag()) << ',' << fmt17(spec.gain(k)) << '\n';
  }
  emit(out, csv.str());
  return 0;
}

int run_noise_report(const Config& cfg, const std::string& out) {
  check_opo_threshold(cfg);
  const SteadyState ss = solve_photon_number(cfg.system);
  if (!ss.single_valued)
    throw PhysicsError("noise report requires a single-valued stable steady state");
  warn_linearization(ss.n_s);
  const LinearizedSystem lin = build_m_matrix(cfg.system, ss.n_s);
  if (!lin.stable) throw PhysicsError("noise report requires a stable system");
  NoiseReport rep;
  try {
    rep = noise_report(cfg.system, cfg.measurement, lin, ss.n_s);
  } catch (const PhysicsError& err) {
    std::ostringstream msg;
    msg << err.what() << " (phi_h = " << cfg.measurement.phi_h << ")";
    throw PhysicsError(msg.str());
  }

  json j;
  j["f1"] = rep.f1;
  j["f2"] = rep.f2;
  j["h1"] = rep.h1;
  j["h2"] = rep.h2;
  j["gamma1"] = rep.gamma1;
  j["gamma2"] = rep.gamma2;
  j["nu1"] = rep.nu1;
  j["nu2"] = rep.nu2;
  j["s_ii"] = rep.s_ii;
  j["s_zz"] = rep.s_zz;
  j["s_ff"] = rep.s_ff;
  j["s_zf"] = rep.s_zf;
  j["ql_product"] = rep.ql_product;
  j["added_noise_quanta"] = rep.added_noise_quanta;
  j["chi_if"] = rep.chi_if;
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_sweep_cmd(const Config& cfg, const SweepSpec& sweep, const std::string& out) {
  const auto rows = run_sweep(cfg, sweep);
  std::ostringstream csv;
  csv << sweep.variable << ",n_s,g0,stable,single_valued,n_stable_roots,ql_product,status\n";
  for (const SweepRow& row : rows) {
    csv << fmt17(row.value) << ',' << fmt17(row.n_s) << ',' << fmt17(row.g0) << ','
        << (row.stable ? 1 : 0) << ',' << (row.single_valued ? 1 : 0) << ','
        << row.n_stable_roots << ',' << fmt17(row.ql_product) << ',' << row.status << '\n';
  }
  emit(out, csv.str());
  return 0;
}

int run_ql_check(int samples, std::uint64_t seed, const std::string& out) {
  const QlCheckSummary s = ql_check(samples, seed);
  json j;
  j["requested"] = s.requested;
  j["evaluated"] = s.evaluated;
  j["skipped"] = s.skipped;
  j["max_rel_deviation"] = s.max_rel_deviation;
  j["max_added_noise_deviation"] = s.max_added_noise_deviation;
  j["pass"] = s.max_rel_deviation < 1e-9;
  emit(out, j.dump(2) + "\n");
  if (s.max_rel_deviation >= 1e-9)
    throw VerificationError("quantum-limit identity violated beyond 1e-9 relative");
  return 0;
}

int run_oracle_verify(const Config& cfg, const std::string& out) {
  check_opo_threshold(cfg);
  const SteadyState ss = solve_photon_number(cfg.system);
  if (!ss.single_valued)
    throw PhysicsError("oracle verification requires a single-valued steady state");
  const LinearizedSystem lin = build_m_matrix(cfg.system, ss.n_s);
  if (!lin.stable) throw PhysicsError("oracle verification requires a stable system");

  std::ostringstream rep;
  rep << "# oracle verification (rng=" << oracle_rng_name() << ", seed=" << cfg.oracle.seed
      << ", dt=" << cfg.oracle.dt << ", duration=" << cfg.oracle.duration << ")\n";
  rep << "quantity,analytic,measured,rel_error,tolerance,status\n";
  bool all_ok = true;

  const double probes[5] = {0.01, 0.5, 2.0, 5.0, 20.0};
  for (double w : probes) {
    TrajectoryConfig tc = cfg.oracle;
    tc.drive_omega = w;
    const double analytic = std::norm(quadrature_gains(lin, cfg.system.kappa, w).first);
    const double measured = time_domain_gain(lin, cfg.system.kappa, tc);
    const double rel = std::abs(measured - analytic) / analytic;
    const bool ok = rel <= 1e-3;
    all_ok = all_ok && ok;
    rep << "gain[" << fmt17(w) << "]," << fmt17(analytic) << ',' << fmt17(measured) << ','
        << fmt17(rel) << ",0.001," << (ok ? "pass" : "FAIL") << '\n';
  }

  {
    const HomodyneCoefficients hc =
        homodyne_coefficients(lin, cfg.system.kappa, cfg.measurement.phi_h);
    const double analytic = current_noise_zero(hc.f1, hc.f2);
    TrajectoryConfig tc = cfg.oracle;
    const double measured =
        stochastic_current_psd(lin, cfg.system.kappa, cfg.measurement.phi_h, tc);
    const double rel = std::abs(measured - analytic) / analytic;
    const bool ok = rel <= 0.05;
    all_ok = all_ok && ok;
    rep << "current_psd," << fmt17(analytic) << ',' << fmt17(measured) << ',' << fmt17(rel)
        << ",0.05," << (ok ? "pass" : "FAIL") << '\n';
  }

  emit(out, rep.str());
  if (!all_ok) throw VerificationError("time-domain oracle disagrees with the analytic spectra");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid Kerr+OPA nonlinear-cavity amplifier toolkit"};
  app.require_subcommand(1);

  std::string config_path, out;
  app.add_option("--config", config_path, "config file (ini-style sections)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out, "output path (default: stdout)");

  auto* sc_steady = app.add_subcommand("steady", "steady-state report (JSON)");
  auto* sc_gain = app.add_subcommand("gain-spectrum", "gain spectrum over a grid (CSV)");
  double w0 = 0.0, w1 = 100.0;
  int wcount = 2001;
  sc_gain->add_option("--omega-start", w0, "grid start");
  sc_gain->add_option("--omega-stop", w1, "grid stop");
  sc_gain->add_option("--omega-count", wcount, "grid points");
  auto* sc_noise = app.add_subcommand("noise-report", "zero-frequency noise report (JSON)");
  auto* sc_sweep = app.add_subcommand("sweep", "parameter sweep (CSV)");
  std::string sw_var, sw_mode;
  double sw_start = 0, sw_stop = 0;
  int sw_count = 0;
  sc_sweep->add_option("--variable", sw_var, "override sweep variable");
  sc_sweep->add_option("--start", sw_start, "override sweep start");
  sc_sweep->add_option("--stop", sw_stop, "override sweep stop");
  sc_sweep->add_option("--count", sw_count, "override sweep point count");
  sc_sweep->add_option("--lambda-mode", sw_mode, "fixed | auto_real_alpha");
  auto* sc_ql = app.add_subcommand("ql-check", "sampled quantum-limit identity check (JSON)");
  int samples = 1000;
  std::uint64_t seed = 1;
  bool seed_given = false;
  sc_ql->add_option("--samples", samples, "number of random configurations");
  sc_ql->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
    seed_given = true;
  });
  auto* sc_oracle =
      app.add_subcommand("oracle-verify", "time-domain vs frequency-domain table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Config cfg = load_config(config_path);
    if (sc_steady->parsed()) return run_steady(cfg, out);
    if (sc_gain->parsed()) return run_gain_spectrum(cfg, out, w0, w1, wcount);
    if (sc_noise->parsed()) return run_noise_report(cfg, out);
    if (sc_sweep->parsed()) {
      SweepSpec sweep = cfg.sweep.value_or(SweepSpec{});
      if (!sw_var.empty()) sweep.variable = sw_var;
      if (sc_sweep->count("--start")) sweep.start = sw_start;
      if (sc_sweep->count("--stop")) sweep.stop = sw_stop;
      if (sc_sweep->count("--count")) sweep.count = sw_count;
      if (!sw_mode.empty()) {
        if (sw_mode == "fixed") sweep.lambda_mode = SweepSpec::LambdaMode::fixed;
        else if (sw_mode == "auto_real_alpha")
          sweep.lambda_mode = SweepSpec::LambdaMode::auto_real_alpha;
        else throw ValidationError("--lambda-mode must be fixed or auto_real_alpha");
      }
      if (sweep.variable.empty())
        throw ValidationError("sweep requires a [sweep] section or --variable/--start/--stop/--count");
      if (sweep.count < 2) throw ValidationError("sweep count must be >= 2");
      if (!(sweep.start < sweep.stop)) throw ValidationError("sweep requires start < stop");
      return run_sweep_cmd(cfg, sweep, out);
    }
    if (sc_ql->parsed())
      return run_ql_check(samples, seed_given ? seed : cfg.oracle.seed, out);
    if (sc_oracle->parsed()) return run_oracle_verify(cfg, out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const PhysicsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const VerificationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
