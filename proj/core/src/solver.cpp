#include "kdvlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kdvlab/errors.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {
namespace {

constexpr double sqrt_2pi = 2.5066282746310005024;

SpectralField airy_phase(const SpectralField& f, double t) {
  return apply_multiplier(f, [t](double xi) {
    return std::polar(1.0, t * xi * xi * xi);
  });
}

void check_finite(const SpectralField& f, double t) {
  if (!std::isfinite(momentum(f)))
    throw InstabilityError("solution became non-finite at t = " + std::to_string(t));
}

void validate_solver_config(const SolverConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw InputError("solver: dt must be positive and finite");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end))
    throw InputError("solver: t_end must be positive and finite");
  if (cfg.record_every < 1) throw InputError("solver: record_every must be >= 1");
}

// Datum must carry no material content at or beyond the dealias cutoff,
// otherwise the truncated dynamics is meaningless.
void check_resolved(const SpectralField& f0) {
  double peak = 0.0, tail = 0.0;
  const int kmax = f0.grid.dealias_k_max();
  for (int i = 0; i < f0.grid.n_points; ++i) {
    const double a = std::abs(f0.coeffs[i]);
    peak = std::max(peak, a);
    if (std::abs(f0.grid.k_of_index(i)) > kmax) tail = std::max(tail, a);
  }
  if (tail > 1e-12 * peak)
    throw GuardError("evolve: unresolved datum, spectral tail " +
                     std::to_string(tail / peak) + " of peak beyond the 2/3 cutoff");
}

double drift_of(double q, double q0) {
  return std::abs(q - q0) / std::max(std::abs(q0), 1.0);
}

}  // namespace

SpectralField free_evolve(const SpectralField& f, double t) {
  if (!std::isfinite(t)) throw InputError("free_evolve: t non-finite");
  return airy_phase(f, t);
}

SpectralField nonlinear_rhs(const SpectralField& f, bool dealias_on) {
  const RealField u = inverse(f);
  RealField w = u;
  for (double& v : w.samples) v *= v;
  SpectralField what = forward(w);
  if (dealias_on) what = dealias(what);
  return apply_multiplier(what, [](double xi) { return complex(0.0, -0.5 * xi); });
}

SpectralField step(const SpectralField& f, double dt, bool dealias_on) {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw InputError("step: bad dt");
  const double h = dt;
  // RK4 for v' = E(-t) N(E(t) v), v = e^{-i xi^3 t} u_hat, stages at 0, h/2, h.
  const SpectralField a = nonlinear_rhs(f, dealias_on);

  SpectralField s2 = f;
  for (size_t i = 0; i < s2.coeffs.size(); ++i)
    s2.coeffs[i] += 0.5 * h * a.coeffs[i];
  const SpectralField b = airy_phase(nonlinear_rhs(airy_phase(s2, 0.5 * h), dealias_on), -0.5 * h);

  SpectralField s3 = f;
  for (size_t i = 0; i < s3.coeffs.size(); ++i)
    s3.coeffs[i] += 0.5 * h * b.coeffs[i];
  const SpectralField c = airy_phase(nonlinear_rhs(airy_phase(s3, 0.5 * h), dealias_on), -0.5 * h);

  SpectralField s4 = f;
  for (size_t i = 0; i < s4.coeffs.size(); ++i)
    s4.coeffs[i] += h * c.coeffs[i];
  const SpectralField d = airy_phase(nonlinear_rhs(airy_phase(s4, h), dealias_on), -h);

  SpectralField v = f;
  for (size_t i = 0; i < v.coeffs.size(); ++i)
    v.coeffs[i] += (h / 6.0) * (a.coeffs[i] + 2.0 * b.coeffs[i] +
                                2.0 * c.coeffs[i] + d.coeffs[i]);
  return airy_phase(v, h);
}

double mass(const SpectralField& f) {
  return sqrt_2pi * f.at_k(0).real();
}

double momentum(const SpectralField& f) {
  double s = 0.0;
  for (const complex& c : f.coeffs) s += std::norm(c);
  return s * f.grid.dxi();
}

double hamiltonian(const SpectralField& f) {
  // Gradient part via Parseval on i xi u_hat; cubic part in physical space.
  double grad = 0.0;
  for (int i = 0; i < f.grid.n_points; ++i) {
    const double xi = f.grid.xi_of_index(i);
    grad += xi * xi * std::norm(f.coeffs[i]);
  }
  grad *= 0.5 * f.grid.dxi();
  const RealField u = inverse(f);
  double cubic = 0.0;
  for (double v : u.samples) cubic += v * v * v;
  cubic *= u.grid.dx() / 6.0;
  return grad - cubic;
}

Trajectory evolve(const RealField& u0, const SolverConfig& cfg) {
  validate_solver_config(cfg);
  SpectralField state = forward(u0);
  check_resolved(state);
  if (cfg.dealias_on) state = dealias(state);

  const long long steps = std::max(1LL, (long long)std::llround(cfg.t_end / cfg.dt));
  const double h = cfg.t_end / (double)steps;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(state);

  const double mass0 = mass(state);
  const double mom0 = momentum(state);
  const double ham0 = hamiltonian(state);
  ConservationReport rep;

  for (long long k = 1; k <= steps; ++k) {
    const double t = h * (double)k;
    try {
      state = step(state, h, cfg.dealias_on);
    } catch (const Error&) {
      // The state was finite entering the step, so a transform refusing
      // mid-step means the solution degenerated inside it.
      throw InstabilityError("solution became non-finite at t = " +
                             std::to_string(t));
    }
    const double mom = momentum(state);
    if (!std::isfinite(mom))
      throw InstabilityError("solution became non-finite at t = " + std::to_string(t));
    rep.mass_drift = std::max(rep.mass_drift, drift_of(mass(state), mass0));
    rep.momentum_drift = std::max(rep.momentum_drift, drift_of(mom, mom0));
    if (k % cfg.record_every == 0 || k == steps) {
      check_finite(state, t);
      rep.hamiltonian_drift =
          std::max(rep.hamiltonian_drift, drift_of(hamiltonian(state), ham0));
      traj.times.push_back(t);
      traj.states.push_back(state);
    }
  }
  traj.conservation = rep;
  return traj;
}

PicardResult picard_iterate(const RealField& u0, double delta,
                            const GevreyParams& p, const PicardOptions& opt) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw InputError("picard: delta must be positive and finite");
  if (opt.slices < 2 || opt.n_max < 1 || !(opt.tol >= 0.0))
    throw InputError("picard: bad options");

  const SpectralField f0 = forward(u0);
  const int S = opt.slices;
  const double h = delta / S;
  const int n = f0.grid.n_points;

  PicardResult res;
  res.slice_times.resize(S + 1);
  for (int i = 0; i <= S; ++i) res.slice_times[i] = h * i;

  // cur[i] = current iterate at t_i, spectral. Start with the free flow.
  std::vector<SpectralField> cur(S + 1);
  for (int i = 0; i <= S; ++i) cur[i] = free_evolve(f0, res.slice_times[i]);
  res.at_delta.push_back(cur[S]);

  double prev_d = -1.0;
  int bad_streak = 0;
  for (int it = 1; it <= opt.n_max; ++it) {
    // A_i = e^{-i xi^3 t_i} * (-i xi / 2) * (u_i^2)^hat : Duhamel integrand
    // referenced to t = 0, so the integral becomes a prefix sum.
    std::vector<SpectralField> A(S + 1);
    for (int i = 0; i <= S; ++i) {
      const RealField u = inverse(cur[i]);
      RealField w = u;
      for (double& v : w.samples) v *= v;
      SpectralField what = dealias(forward(w));
      const double ti = res.slice_times[i];
      A[i] = apply_multiplier(what, [ti](double xi) {
        return complex(0.0, -0.5 * xi) * std::polar(1.0, -ti * xi * xi * xi);
      });
    }

    std::vector<SpectralField> next(S + 1);
    SpectralField prefix = make_spectral_field(f0.grid);
    for (int i = 0; i <= S; ++i) {
      if (i > 0)
        for (int m = 0; m < n; ++m)
          prefix.coeffs[m] += 0.5 * h * (A[i - 1].coeffs[m] + A[i].coeffs[m]);
      SpectralField sum = f0;
      for (int m = 0; m < n; ++m) sum.coeffs[m] += prefix.coeffs[m];
      next[i] = free_evolve(sum, res.slice_times[i]);
    }

    double d = 0.0;
    for (int i = 0; i <= S; ++i) {
      SpectralField diff = next[i];
      diff -= cur[i];
      d = std::max(d, gevrey_norm(diff, p));
    }
    res.increments.push_back(d);
    if (prev_d >= 0.0) {
      const double factor = d / prev_d;
      res.factors.push_back(factor);
      if (!(factor < 1.0)) {  // also catches nan/inf
        if (++bad_streak >= 3)
          throw NoContractionError(
              "picard: no contraction at delta = " + std::to_string(delta) +
              " (three consecutive factors >= 1)");
      } else {
        bad_streak = 0;
      }
    }
    prev_d = d;
    cur = std::move(next);
    res.at_delta.push_back(cur[S]);
    if (d <= opt.tol) {
      res.converged = true;
      break;
    }
  }
  res.limit = std::move(cur);
  return res;
}

double uniqueness_gap_ratio(const RealField& u0, const RealField& v0,
                            const SolverConfig& cfg) {
  SolverConfig c = cfg;
  c.record_every = 1;
  const Trajectory a = evolve(u0, c);
  const Trajectory b = evolve(v0, c);
  if (a.times.size() != b.times.size())
    throw GuardError("uniqueness diagnostic: trajectory size mismatch");

  auto grad_sup = [](const SpectralField& f) {
    const SpectralField fx =
        apply_multiplier(f, [](double xi) { return complex(0.0, xi); });
    const RealField ux = inverse(fx);
    double m = 0.0;
    for (double v : ux.samples) m = std::max(m, std::abs(v));
    return m;
  };

  SpectralField d0 = a.states[0];
  d0 -= b.states[0];
  const double gap0 = l2_norm(d0);
  if (!(gap0 > 0.0))
    throw GuardError("uniqueness diagnostic: identical data (zero initial gap)");

  double worst = 0.0;
  double integral = 0.0;
  double prev_rate = grad_sup(a.states[0]) + grad_sup(b.states[0]);
  for (size_t i = 1; i < a.times.size(); ++i) {
    const double rate = grad_sup(a.states[i]) + grad_sup(b.states[i]);
    integral += 0.5 * (a.times[i] - a.times[i - 1]) * (prev_rate + rate);
    prev_rate = rate;
    SpectralField d = a.states[i];
    d -= b.states[i];
    worst = std::max(worst, l2_norm(d) / (gap0 * std::exp(integral)));
  }
  return worst;
}

}  // namespace kdvlab
