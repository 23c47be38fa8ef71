#include "kdvlab/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "json.hpp"
#include "kdvlab/almost_conservation.hpp"
#include "kdvlab/bilinear.hpp"
#include "kdvlab/csv.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {
namespace {

using json = nlohmann::ordered_json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct CheckList {
  bool all_ok = true;

  void check(bool ok, const char* what, double value, double tol) {
    std::printf("  %-44s %.3e (tol %.3e) [%s]\n", what, value, tol,
                ok ? "OK" : "CHECK FAILED");
    if (!ok) all_ok = false;
  }
};

RadiusEstimate radius_or_nan(const SpectralField& f, const RadiusFitOptions& opt) {
  try {
    return estimate_radius(f, opt);
  } catch (const GuardError&) {
    RadiusEstimate r;
    r.sigma_hat = kNan;
    r.r_squared = kNan;
    return r;
  }
}

int cmd_simulate(const CommandContext& ctx, std::vector<std::string>& outputs) {
  const Config& cfg = ctx.config;
  Rng rng(ctx.seed);
  const RealField u0 = make_initial(cfg, rng);
  const Trajectory traj = evolve(u0, cfg.solver);

  CsvWriter csv({"t", "l2", "mass", "momentum", "hamiltonian", "gevrey_norm",
                 "radius_hat", "r_squared"});
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const SpectralField& s = traj.states[i];
    const RadiusEstimate re = radius_or_nan(s, cfg.fit);
    csv.add_numeric_row({traj.times[i], l2_norm(s), mass(s), momentum(s),
                         hamiltonian(s), gevrey_norm(s, cfg.gevrey),
                         re.sigma_hat, re.r_squared});
  }
  csv.write(ctx.out_dir / "trajectory.csv");
  outputs.push_back("trajectory.csv");

  std::printf("simulate: preset=%s n=%d dt=%g t_end=%g snapshots=%zu\n",
              std::string(to_string(cfg.initial.preset)).c_str(), cfg.grid_n,
              cfg.solver.dt, cfg.solver.t_end, traj.times.size());
  CheckList checks;
  checks.check(traj.conservation.momentum_drift <= ctx.tolerances.momentum_drift,
               "momentum drift", traj.conservation.momentum_drift,
               ctx.tolerances.momentum_drift);
  checks.check(
      traj.conservation.hamiltonian_drift <= ctx.tolerances.hamiltonian_drift,
      "hamiltonian drift", traj.conservation.hamiltonian_drift,
      ctx.tolerances.hamiltonian_drift);
  const RadiusEstimate last = radius_or_nan(traj.states.back(), cfg.fit);
  std::printf("  final radius estimate %.6g (r^2 %.6g)\n", last.sigma_hat,
              last.r_squared);
  return checks.all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_radius(const CommandContext& ctx, std::vector<std::string>& outputs) {
  const Config& cfg = ctx.config;
  Rng rng(ctx.seed);
  const RealField u0 = make_initial(cfg, rng);

  std::vector<double> times;
  std::vector<SpectralField> states;
  if (cfg.solver.t_end > 0.0) {
    Trajectory traj = evolve(u0, cfg.solver);
    times = std::move(traj.times);
    states = std::move(traj.states);
  } else {
    times.push_back(0.0);
    states.push_back(forward(u0));
  }

  CsvWriter csv({"t", "sigma_hat", "at_cap", "r_squared", "n_modes",
                 "fit_xi_lo", "fit_xi_hi"});
  for (size_t i = 0; i < times.size(); ++i) {
    const RadiusEstimate re = estimate_radius(states[i], cfg.fit);
    csv.add_numeric_row({times[i], re.sigma_hat, re.at_cap ? 1.0 : 0.0,
                         re.r_squared, double(re.n_modes), re.fit_xi_lo,
                         re.fit_xi_hi});
  }
  csv.write(ctx.out_dir / "radius.csv");
  outputs.push_back("radius.csv");

  const RadiusEstimate re = estimate_radius(states.back(), cfg.fit);
  std::printf("radius: sigma_hat=%.6g%s r^2=%.6g modes=%d window=[%.3g, %.3g]\n",
              re.sigma_hat, re.at_cap ? " (at cap)" : "", re.r_squared,
              re.n_modes, re.fit_xi_lo, re.fit_xi_hi);
  return kExitOk;
}

int cmd_picard(const CommandContext& ctx, std::vector<std::string>& outputs) {
  const Config& cfg = ctx.config;
  Rng rng(ctx.seed);
  const RealField u0 = make_initial(cfg, rng);
  const PicardResult pr =
      picard_iterate(u0, cfg.picard.delta, cfg.gevrey, cfg.picard.options);

  CsvWriter csv({"n", "increment", "factor"});
  for (size_t i = 0; i < pr.increments.size(); ++i)
    csv.add_numeric_row({double(i + 1), pr.increments[i],
                         i > 0 ? pr.increments[i] / pr.increments[i - 1] : kNan});
  csv.write(ctx.out_dir / "picard.csv");
  outputs.push_back("picard.csv");

  double worst = 0.0;
  for (double f : pr.factors) worst = std::max(worst, f);
  std::printf("picard: delta=%g iterations=%zu converged=%s\n", cfg.picard.delta,
              pr.increments.size(), pr.converged ? "yes" : "no");
  std::printf("  last increment %.3e, worst contraction factor %.3g\n",
              pr.increments.empty() ? 0.0 : pr.increments.back(), worst);
  if (!pr.converged) {
    std::printf("  [CHECK FAILED] fixed point not reached within n_max\n");
    return kExitCheckFailed;
  }
  std::printf("  [OK] fixed point reached\n");
  return kExitOk;
}

int cmd_growth(const CommandContext& ctx, std::vector<std::string>& outputs) {
  const Config& cfg = ctx.config;
  Rng rng(ctx.seed);
  const RealField u0 = make_initial(cfg, rng);
  const GrowthSeries gs =
      track_growth(u0, cfg.growth.delta, cfg.growth.sigmas, cfg.solver);

  CsvWriter csv({"sigma", "growth", "used"});
  for (size_t i = 0; i < gs.sigma.size(); ++i)
    csv.add_numeric_row({gs.sigma[i], gs.growth[i], double(gs.used[i])});
  csv.write(ctx.out_dir / "growth.csv");
  outputs.push_back("growth.csv");

  std::printf("growth: delta=%g m0=%.6g slope=%.4f intercept=%.4f points=%d\n",
              cfg.growth.delta, gs.m0, gs.slope, gs.intercept, gs.n_used);
  return kExitOk;
}

int cmd_counterexample(const CommandContext& ctx,
                       std::vector<std::string>& outputs) {
  const CounterexampleBlock& cx = ctx.config.counterexample;
  std::vector<double> ladder = cx.n_ladder;
  std::sort(ladder.begin(), ladder.end());

  CsvWriter csv({"N", "variant", "ratio", "ratio_growth_vs_prev"});
  bool all_ok = true;
  std::printf("counterexample: rho=%g ladder of %zu\n", cx.rho, ladder.size());
  for (CounterexampleVariant variant : cx.variants) {
    double prev_ratio = kNan, prev_n = kNan;
    const bool decaying = variant == CounterexampleVariant::min_symbol;
    const double tol = decaying ? ctx.tolerances.ratio_tol_decaying
                                : ctx.tolerances.ratio_tol_growing;
    for (double n : ladder) {
      CounterexampleSpec spec;
      spec.big_n = n;
      spec.rho = cx.rho;
      spec.variant = variant;
      spec.res_xi = cx.res_xi;
      spec.res_xi1 = cx.res_xi1;
      spec.res_mu = cx.res_mu;
      spec.res_mu1 = cx.res_mu1;
      const CounterexampleResult r = counterexample_ratio(spec);

      double growth = kNan;
      if (!std::isnan(prev_ratio)) {
        growth = r.ratio / prev_ratio;
        const double expected =
            std::pow(n / prev_n, decaying ? -2.0 * cx.rho : cx.rho);
        const double rel = std::abs(growth / expected - 1.0);
        const bool ok = rel <= tol;
        std::printf("  %-18s N %5g -> %5g: ratio factor %.4f, power law "
                    "%.4f, off by %.2f%% [%s]\n",
                    std::string(to_string(variant)).c_str(), prev_n, n, growth,
                    expected, 100.0 * rel, ok ? "OK" : "CHECK FAILED");
        if (!ok) all_ok = false;
      }
      csv.add_row({format_double(n), std::string(to_string(variant)),
                   format_double(r.ratio), format_double(growth)});
      prev_ratio = r.ratio;
      prev_n = n;
    }
  }
  csv.write(ctx.out_dir / "counterexample.csv");
  outputs.push_back("counterexample.csv");
  return all_ok ? kExitOk : kExitCheckFailed;
}

SpaceTimeField random_space_time_field(const SpaceTimeGrid& g, Rng& rng) {
  SpaceTimeField f = make_space_time_field(g);
  for (int i = 0; i < g.n_xi; ++i) {
    for (int j = 0; j < g.n_tau; ++j) {
      const double env =
          std::exp(-0.5 * (std::abs(g.xi(i)) + std::abs(g.tau(j))));
      f.at(i, j) = complex(rng.normal(), rng.normal()) * env;
    }
  }
  return f;
}

int cmd_kpv_scan(const CommandContext& ctx, std::vector<std::string>& outputs) {
  const KpvBlock& kp = ctx.config.kpv;
  const SpaceTimeGrid g =
      SpaceTimeGrid::make(kp.n_xi, kp.n_tau, kp.dxi, kp.dtau);
  Rng rng(ctx.seed);

  CsvWriter csv({"draw", "bprime", "ratio", "ratio_weight_stripped",
                 "dominated"});
  bool all_ok = true;
  for (int draw = 0; draw < kp.draws; ++draw) {
    const SpaceTimeField u = random_space_time_field(g, rng);
    const SpaceTimeField v = random_space_time_field(g, rng);

    // |U|, |V| carry e^{sigma |xi|} times the moduli; by the triangle
    // inequality on |xi| the weighted ratio cannot exceed the plain ratio of
    // the stripped pair.
    SpaceTimeField au = u, av = v;
    for (int i = 0; i < g.n_xi; ++i) {
      const double w = std::exp(kp.sigma * std::abs(g.xi(i)));
      for (int j = 0; j < g.n_tau; ++j) {
        au.at(i, j) = std::abs(u.at(i, j)) * w;
        av.at(i, j) = std::abs(v.at(i, j)) * w;
      }
    }

    for (double bprime : kp.bprime_grid) {
      const double ratio = kpv_ratio(u, v, kp.sigma, kp.s, kp.b, bprime);
      const double ratio0 = kpv_ratio(au, av, 0.0, kp.s, kp.b, bprime);
      const bool dominated = ratio <= ratio0 * (1.0 + 1e-12);
      if (!dominated) all_ok = false;
      csv.add_numeric_row({double(draw), bprime, ratio, ratio0,
                           dominated ? 1.0 : 0.0});
    }
  }
  csv.write(ctx.out_dir / "kpv.csv");
  outputs.push_back("kpv.csv");

  std::printf("kpv-scan: %d draw(s), sigma=%g b=%g, domination %s\n", kp.draws,
              kp.sigma, kp.b, all_ok ? "[OK]" : "[CHECK FAILED]");
  return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_continuation(const CommandContext& ctx,
                     std::vector<std::string>& outputs) {
  const Config& cfg = ctx.config;
  Rng rng(ctx.seed);
  const RealField u0 = make_initial(cfg, rng);

  ContinuationParams params = cfg.continuation.params;
  if (cfg.continuation.calibrate) {
    const CalibrationResult cal = calibrate(u0, params, cfg.solver);
    params = cal.params;
    std::printf("continuation: calibrated c0=%.6g a=%.4f C=%.6g\n", params.c0,
                params.a, params.C);
  }

  const double m0 = gevrey_norm(forward(u0), GevreyParams{0.0, 0.0});
  const double delta = local_timestep(params, m0);

  CsvWriter sched({"T", "delta", "n_steps", "sigma", "c"});
  for (double t : cfg.continuation.t_ladder) {
    const SigmaSolution sol = solve_sigma(params, t, m0);
    const InductionResult ind = simulate_induction(params, m0, sol.sigma, t);
    sched.add_numeric_row({t, delta, double(ind.n_steps), sol.sigma, sol.c});
  }
  sched.write(ctx.out_dir / "schedule.csv");
  outputs.push_back("schedule.csv");

  const GlobalRunResult gr =
      run_global(u0, cfg.continuation.t_end, params, cfg.solver, cfg.fit);
  CsvWriter bound({"t", "M_sigma_sq", "bound_2M0_sq"});
  double worst = 0.0;
  for (size_t i = 0; i < gr.times.size(); ++i) {
    bound.add_numeric_row({gr.times[i], gr.m_sigma_sq[i], gr.bound});
    worst = std::max(worst, gr.m_sigma_sq[i]);
  }
  bound.write(ctx.out_dir / "bound.csv");
  outputs.push_back("bound.csv");

  std::printf("continuation: m0=%.6g sigma=%.6g horizon=%g steps=%lld\n", gr.m0,
              gr.sigma_used, cfg.continuation.t_end,
              (long long)gr.induction.n_steps);
  CheckList checks;
  const double allowed = gr.bound * ctx.tolerances.bound_slack;
  checks.check(gr.bound == 0.0 ? worst == 0.0 : worst <= allowed,
               "sup_t M_sigma^2 within doubling bound", worst, allowed);
  checks.check(gr.induction.ok, "norm induction stays below 2 M0^2",
               gr.induction.m2_final, gr.induction.bound);
  return checks.all_ok ? kExitOk : kExitCheckFailed;
}

int dispatch(const std::string& name, const CommandContext& ctx,
             std::vector<std::string>& outputs) {
  if (name == "simulate") return cmd_simulate(ctx, outputs);
  if (name == "radius") return cmd_radius(ctx, outputs);
  if (name == "picard") return cmd_picard(ctx, outputs);
  if (name == "growth") return cmd_growth(ctx, outputs);
  if (name == "counterexample") return cmd_counterexample(ctx, outputs);
  if (name == "kpv-scan") return cmd_kpv_scan(ctx, outputs);
  if (name == "continuation") return cmd_continuation(ctx, outputs);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace

ToleranceProfile tolerance_profile(std::string_view name) {
  if (name == "default")
    return ToleranceProfile{"default", 1e-7, 1e-5, 1.05, 0.10, 0.15};
  if (name == "strict")
    return ToleranceProfile{"strict", 1e-9, 1e-6, 1.02, 0.05, 0.10};
  throw ConfigError("unknown tolerance profile '" + std::string(name) +
                    "', expected default | strict");
}

int run_command(const std::string& name, const CommandContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  const bool out_ok = !ec && std::filesystem::is_directory(ctx.out_dir);

  int code = kExitOk;
  std::string error_msg;
  std::vector<std::string> outputs;
  try {
    if (!out_ok)
      throw Error("cannot create output directory " + ctx.out_dir.string());
    code = dispatch(name, ctx, outputs);
  } catch (const ConfigError& e) {
    code = kExitConfig;
    error_msg = e.what();
  } catch (const InstabilityError& e) {
    code = kExitInstability;
    error_msg = e.what();
  } catch (const CalibrationError& e) {
    code = kExitCalibration;
    error_msg = e.what();
  } catch (const GuardError& e) {
    code = kExitGuard;
    error_msg = e.what();
  } catch (const std::exception& e) {
    code = kExitInternal;
    error_msg = e.what();
  }
  if (!error_msg.empty()) std::fprintf(stderr, "error: %s\n", error_msg.c_str());

  if (out_ok) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    json manifest;
    manifest["command"] = name;
    manifest["seed"] = ctx.seed;
    manifest["tolerance_profile"] = ctx.tolerances.name;
    manifest["exit_code"] = code;
    manifest["status"] = code == kExitOk        ? "ok"
                         : code == kExitCheckFailed ? "check_failed"
                                                    : "error";
    if (!error_msg.empty()) manifest["error"] = error_msg;
    manifest["outputs"] = outputs;
    manifest["config"] = json::parse(effective_config_json(ctx.config));
    manifest["wall_ms"] = ms;
    try {
      write_text_file_atomic(ctx.out_dir / "manifest.json",
                             manifest.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: manifest write failed: %s\n", e.what());
    }
  }
  return code;
}

}  // namespace kdvlab
