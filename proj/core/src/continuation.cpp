#include "kdvlab/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kdvlab/almost_conservation.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {
namespace {

void check_params(const ContinuationParams& p) {
  if (!(p.c0 > 0.0) || !(p.a >= 1.0) || !(p.C > 0.0) || !(p.rho > 0.0) ||
      !(p.rho <= 1.0) || !(p.sigma0 > 0.0))
    throw InputError(
        "continuation params need c0 > 0, a >= 1, C > 0, rho in (0,1], "
        "sigma0 > 0");
}

void check_m0(double m0) {
  if (!(m0 >= 0.0) || !std::isfinite(m0))
    throw InputError("datum size m0 must be finite and >= 0");
}

}  // namespace

double local_timestep(const ContinuationParams& p, double m0) {
  check_params(p);
  check_m0(m0);
  return p.c0 / std::pow(1.0 + 2.0 * m0, p.a);
}

double induction_increment(const ContinuationParams& p, double m0, double sigma) {
  check_params(p);
  check_m0(m0);
  return p.C * std::pow(sigma, p.rho) * kTwoPowThreeHalves * (m0 * m0 * m0);
}

double smallness_lhs(const ContinuationParams& p, double m0, double sigma,
                     double t_end) {
  check_params(p);
  check_m0(m0);
  if (!(t_end > 0.0)) throw InputError("smallness: horizon must be > 0");
  const double delta = local_timestep(p, m0);
  return (2.0 * t_end / delta) * p.C * std::pow(sigma, p.rho) *
         kTwoPowThreeHalves * m0;
}

bool smallness_ok(const ContinuationParams& p, double m0, double sigma,
                  double t_end) {
  if (!(sigma <= p.sigma0)) return false;
  return smallness_lhs(p, m0, sigma, t_end) <= 1.0 + 1e-13;
}

SigmaSolution solve_sigma(const ContinuationParams& p, double t_end, double m0) {
  check_params(p);
  check_m0(m0);
  if (!(t_end > 0.0)) throw InputError("solve_sigma: horizon must be > 0");
  if (m0 == 0.0)
    return SigmaSolution{p.sigma0, std::numeric_limits<double>::infinity()};
  const double c =
      std::pow(p.c0 / (p.C * 2.0 * kTwoPowThreeHalves * m0 *
                       std::pow(1.0 + 2.0 * m0, p.a)),
               1.0 / p.rho);
  return SigmaSolution{std::min(p.sigma0, c * std::pow(t_end, -1.0 / p.rho)), c};
}

InductionResult simulate_induction(const ContinuationParams& p, double m0,
                                   double sigma, double t_end) {
  if (!(t_end > 0.0)) throw InputError("induction: horizon must be > 0");
  if (!(sigma >= 0.0)) throw InputError("induction: sigma must be >= 0");
  InductionResult r;
  r.delta = local_timestep(p, m0);
  long long n = (long long)std::floor(t_end / r.delta);
  while (double(n) * r.delta < t_end) ++n;  // fp-safe ceiling
  if (n + 1 > kInductionBudget)
    throw GuardError("induction: " + std::to_string(n + 1) +
                     " lattice points exceed the budget");
  r.n_steps = n;
  r.increment = induction_increment(p, m0, sigma);
  r.m2_initial = m0 * m0;
  r.bound = 2.0 * r.m2_initial;
  r.m2_final = r.m2_at(n);
  r.ok = true;
  const double tol_bound = r.bound * (1.0 + 1e-12);
  const long long keep = std::min<long long>(n + 1, 4096);
  r.m2_prefix.reserve(size_t(keep));
  for (long long k = 0; k <= n; ++k) {
    const double m2 = r.m2_at(k);
    if (k < keep) r.m2_prefix.push_back(m2);
    if (r.ok && !(m2 <= tol_bound)) {
      r.ok = false;
      r.first_violation = k;
    }
  }
  return r;
}

CalibrationResult calibrate(const RealField& u0, const ContinuationParams& p0,
                            const SolverConfig& base,
                            const CalibrateOptions& opt) {
  check_params(p0);
  if (opt.scales.empty() || opt.delta_trials.empty() || opt.sigma_probe.empty())
    throw InputError("calibrate: empty scale, delta, or sigma lists");
  if (!(opt.factor_cut > 0.0) || !(opt.factor_cut < 1.0) ||
      !(opt.margin > 0.0) || !(opt.margin <= 1.0))
    throw InputError("calibrate: factor_cut in (0,1), margin in (0,1]");

  std::vector<double> trials = opt.delta_trials;
  std::sort(trials.begin(), trials.end(), std::greater<>());
  // track_growth wants the strip widths strictly descending.
  std::vector<double> probes = opt.sigma_probe;
  std::sort(probes.begin(), probes.end(), std::greater<>());

  CalibrationResult out;
  out.params = p0;

  const double m_base = gevrey_norm(forward(u0), GevreyParams{0.0, 0.0});
  if (m_base == 0.0) return out;  // zero datum: nothing to fit, p0 stands

  for (double scale : opt.scales) {
    RealField ui = u0;
    for (double& v : ui.samples) v *= scale;

    CalibrationScaleReport rep;
    rep.scale = scale;
    rep.m0 = scale * m_base;

    for (double delta : trials) {
      try {
        const PicardResult pr = picard_iterate(ui, delta, GevreyParams{0.0, 0.0});
        bool contracting = !pr.factors.empty();
        for (double f : pr.factors)
          if (!(f < opt.factor_cut)) contracting = false;
        if (contracting) {
          rep.delta_star = delta;
          break;
        }
      } catch (const NoContractionError&) {
        // too large a step for this scale, try the next smaller one
      }
    }
    if (rep.delta_star == 0.0)
      throw CalibrationError("no trial step contracts at scale " +
                             std::to_string(scale));

    const GrowthSeries gs =
        track_growth(ui, rep.delta_star, probes, base);
    for (size_t i = 0; i < gs.sigma.size(); ++i) {
      if (!gs.used[i]) continue;
      const double denom = std::pow(gs.sigma[i], p0.rho) * kTwoPowThreeHalves *
                           (rep.m0 * rep.m0 * rep.m0);
      rep.c_bound = std::max(rep.c_bound, gs.growth[i] / denom);
    }

    out.scales.push_back(rep);
  }

  // log delta* = log c0 - a log(1 + 2 M0), ordinary least squares
  double sx = 0, sy = 0;
  const int m = int(out.scales.size());
  for (const auto& rep : out.scales) {
    sx += std::log1p(2.0 * rep.m0);
    sy += std::log(rep.delta_star);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& rep : out.scales) {
    const double dx = std::log1p(2.0 * rep.m0) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(rep.delta_star) - my);
  }
  if (!(sxx > 0.0))
    throw CalibrationError("calibrate: datum scales give identical sizes");
  const double a_fit = -sxy / sxx;
  out.params.a = std::max(a_fit, 1.0 + 1e-6);
  out.fit_intercept = my + out.params.a * mx;

  // Hold every certified (M0, delta*) pair with margin; cap keeps c0 <= 1.
  double c0 = std::numeric_limits<double>::infinity();
  for (const auto& rep : out.scales)
    c0 = std::min(c0, opt.margin * rep.delta_star *
                          std::pow(1.0 + 2.0 * rep.m0, out.params.a));
  out.params.c0 = std::min(c0, 1.0);

  double cmax = 0.0;
  for (const auto& rep : out.scales) cmax = std::max(cmax, rep.c_bound);
  if (!(cmax > 0.0) || !std::isfinite(cmax))
    throw CalibrationError("calibrate: no usable growth measurement");
  out.params.C = cmax;

  return out;
}

GlobalRunResult run_global(const RealField& u0, double t_end,
                           const ContinuationParams& p, const SolverConfig& base,
                           const RadiusFitOptions& fit) {
  if (!(t_end > 0.0)) throw InputError("run_global: horizon must be > 0");
  GlobalRunResult out;
  out.m0 = gevrey_norm(forward(u0), GevreyParams{0.0, 0.0});
  const SigmaSolution sol = solve_sigma(p, t_end, out.m0);
  out.sigma_used = sol.sigma;
  out.bound = 2.0 * out.m0 * out.m0;

  SolverConfig cfg = base;
  cfg.t_end = t_end;
  out.trajectory = evolve(u0, cfg);

  const GevreyParams gp{out.sigma_used, 0.0};
  out.within_bound = true;
  for (size_t i = 0; i < out.trajectory.times.size(); ++i) {
    const double t = out.trajectory.times[i];
    const double m = gevrey_norm(out.trajectory.states[i], gp);
    out.times.push_back(t);
    out.m_sigma_sq.push_back(m * m);
    out.sigma_floor.push_back(t > 0.0 ? solve_sigma(p, t, out.m0).sigma
                                      : p.sigma0);
    try {
      out.radius.push_back(estimate_radius(out.trajectory.states[i], fit));
    } catch (const GuardError&) {
      RadiusEstimate none;  // too few live modes to fit
      none.sigma_hat = std::numeric_limits<double>::quiet_NaN();
      none.r_squared = std::numeric_limits<double>::quiet_NaN();
      out.radius.push_back(none);
    }
    if (!(m * m <= out.bound * 1.05)) out.within_bound = false;
  }
  out.induction = simulate_induction(p, out.m0, out.sigma_used, t_end);
  return out;
}

double GeneralSchedule::sigma_at(double t_end) const {
  if (!(t_end > 0.0)) throw InputError("schedule: horizon must be > 0");
  if (std::isinf(kappa)) return sigma_cap;
  return std::min(sigma_cap, kappa * std::pow(t_end, -1.0 / rho));
}

GeneralSchedule general_s_schedule(const GridSpec& grid, double sigma0, double s,
                                   double m0, const ContinuationParams& p) {
  check_params(p);
  check_m0(m0);
  if (!(sigma0 > 0.0)) throw InputError("general_s_schedule: sigma0 must be > 0");
  GeneralSchedule sched;
  sched.sigma_cap = 0.25 * sigma0;
  sched.rho = p.rho;
  const double embed = embedding_constant(grid, GevreyParams{sigma0, s},
                                          GevreyParams{0.5 * sigma0, 0.0});
  sched.embedded_m0 = embed * m0;
  ContinuationParams half = p;
  half.sigma0 = 0.5 * sigma0;
  // c from the half-strip launch; the cap is folded into sigma_at
  sched.kappa = 0.5 * solve_sigma(half, 1.0, sched.embedded_m0).c;
  return sched;
}

}  // namespace kdvlab
