#include "kdvlab/almost_conservation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kdvlab/errors.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {
namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014326779;

}  // namespace

SymbolGap symbol_gap(double sigma, double theta, double alpha, double beta) {
  if (!(sigma >= 0.0) || !(theta >= 0.0) || !(theta <= 1.0))
    throw InputError("symbol_gap: need sigma >= 0 and theta in [0,1]");
  const double ea = sigma * std::abs(alpha);
  const double eb = sigma * std::abs(beta);
  if (ea > kGevreyExponentGuard || eb > kGevreyExponentGuard)
    throw GuardError("symbol_gap: exponent " + std::to_string(std::max(ea, eb)) +
                     " exceeds guard " + std::to_string(kGevreyExponentGuard));
  SymbolGap g;
  const double prod = std::exp(ea) * std::exp(eb);
  g.lhs = prod - std::exp(sigma * std::abs(alpha + beta));
  g.rhs = std::pow(2.0 * sigma * std::min(std::abs(alpha), std::abs(beta)), theta) * prod;
  return g;
}

SpectralField commutator_source(const SpectralField& f, double sigma) {
  if (!(sigma >= 0.0)) throw InputError("commutator_source: sigma must be >= 0");
  const SpectralField fd = dealias(f);
  const SpectralField smoothed = apply_gevrey(fd, sigma);

  // (e^{sigma|D|} u)^2, spectral and dealiased
  RealField gu = inverse(smoothed);
  for (double& v : gu.samples) v *= v;
  const SpectralField a = dealias(forward(gu));

  // e^{sigma|D|} (u^2)
  RealField uu = inverse(fd);
  for (double& v : uu.samples) v *= v;
  const SpectralField b = apply_gevrey(dealias(forward(uu)), sigma);

  SpectralField diff = a;
  diff -= b;
  return apply_multiplier(diff, [](double xi) { return complex(0.0, 0.5 * xi); });
}

SpectralField brho_spatial(const SpectralField& a, const SpectralField& b,
                           double rho) {
  require_same_grid(a.grid, b.grid, "brho_spatial");
  if (!(rho >= 0.0) || !(rho <= 1.0))
    throw InputError("brho_spatial: rho must lie in [0,1]");
  const GridSpec& g = a.grid;
  const int n = g.n_points;
  const int half = n / 2;
  SpectralField out = make_spectral_field(g);
  const double measure = inv_sqrt_2pi * g.dxi();
  for (int k = -half; k < half; ++k) {
    complex acc = 0.0;
    for (int k1 = -half; k1 < half; ++k1) {
      const int k2 = k - k1;
      if (k2 < -half || k2 >= half) continue;
      const complex va = a.coeffs[g.index_of_k(k2)];
      const complex vb = b.coeffs[g.index_of_k(k1)];
      if (va == 0.0 || vb == 0.0) continue;
      const double w = std::pow(
          std::min(std::abs(g.xi_of_k(k2)), std::abs(g.xi_of_k(k1))), rho);
      acc += w * va * vb;
    }
    out.coeffs[g.index_of_k(k)] = measure * acc;
  }
  return out;
}

SpectralField commutator_majorant(const SpectralField& f, double sigma, double rho) {
  const SpectralField fd = dealias(f);
  SpectralField absu = apply_gevrey(fd, sigma);
  for (complex& c : absu.coeffs) c = std::abs(c);
  const SpectralField conv = brho_spatial(absu, absu, rho);
  const double pref = 0.5 * std::pow(2.0 * sigma, rho);
  return apply_multiplier(conv, [pref](double xi) {
    return complex(pref * std::abs(xi), 0.0);
  });
}

GrowthSeries track_growth(const RealField& u0, double delta,
                          std::span<const double> sigma_grid,
                          const SolverConfig& base) {
  if (sigma_grid.empty()) throw InputError("track_growth: empty sigma grid");
  for (size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!(sigma_grid[i] > 0.0))
      throw InputError("track_growth: sigma values must be > 0");
    if (i > 0 && !(sigma_grid[i] < sigma_grid[i - 1]))
      throw InputError("track_growth: sigma grid must be strictly descending");
  }

  SolverConfig cfg = base;
  cfg.t_end = delta;
  cfg.record_every = 1;
  const Trajectory traj = evolve(u0, cfg);

  GrowthSeries out;
  out.m0 = gevrey_norm(traj.states[0], GevreyParams{0.0, 0.0});
  const double noise_cut = 1e-14;  // below this G is fp cancellation debris

  for (double s : sigma_grid) {
    const GevreyParams p{s, 0.0};
    const double base_sq = std::pow(gevrey_norm(traj.states[0], p), 2);
    double worst = 0.0;  // sup over t includes t = 0, so G >= 0
    for (const SpectralField& st : traj.states) {
      const double m = gevrey_norm(st, p);
      worst = std::max(worst, m * m - base_sq);
    }
    out.sigma.push_back(s);
    out.growth.push_back(worst);
    out.used.push_back(worst > noise_cut ? 1 : 0);
  }

  double sx = 0, sy = 0;
  int m = 0;
  for (size_t i = 0; i < out.sigma.size(); ++i) {
    if (!out.used[i]) continue;
    sx += std::log(out.sigma[i]);
    sy += std::log(out.growth[i]);
    ++m;
  }
  if (m < 2)
    throw GuardError("track_growth: fit undefined, only " + std::to_string(m) +
                     " growth values above the noise cut");
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < out.sigma.size(); ++i) {
    if (!out.used[i]) continue;
    const double dx = std::log(out.sigma[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(out.growth[i]) - my);
  }
  if (!(sxx > 0.0)) throw GuardError("track_growth: degenerate sigma grid");
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.n_used = m;
  return out;
}

}  // namespace kdvlab
