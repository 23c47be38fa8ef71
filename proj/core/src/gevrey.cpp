#include "kdvlab/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kdvlab/errors.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {
namespace {

void check_exponent_guard(double sigma, const GridSpec& grid, const char* what) {
  const double worst = std::abs(sigma) * grid.xi_max();
  if (worst > kGevreyExponentGuard)
    throw GuardError(std::string(what) + ": sigma * xi_max = " +
                     std::to_string(worst) + " exceeds guard " +
                     std::to_string(kGevreyExponentGuard));
}

}  // namespace

double gevrey_norm(const SpectralField& f, const GevreyParams& p) {
  if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma) || !std::isfinite(p.s))
    throw InputError("gevrey_norm: sigma must be finite and >= 0, s finite");
  if (p.sigma > 0.0) check_exponent_guard(p.sigma, f.grid, "gevrey_norm");
  double sum = 0.0;
  const int n = f.grid.n_points;
  for (int i = 0; i < n; ++i) {
    const double axi = std::abs(f.grid.xi_of_index(i));
    const double w = std::exp(p.sigma * axi) * std::pow(1.0 + axi, p.s);
    sum += w * w * std::norm(f.coeffs[i]);
  }
  return std::sqrt(sum * f.grid.dxi());
}

SpectralField apply_gevrey(const SpectralField& f, double sigma) {
  if (!std::isfinite(sigma)) throw InputError("apply_gevrey: sigma non-finite");
  if (sigma != 0.0) check_exponent_guard(sigma, f.grid, "apply_gevrey");
  return apply_multiplier(
      f, [sigma](double xi) { return complex(std::exp(sigma * std::abs(xi)), 0.0); });
}

double embedding_constant(const GridSpec& grid, const GevreyParams& from,
                          const GevreyParams& to) {
  if (!(to.sigma < from.sigma))
    throw GuardError("embedding_constant: requires to.sigma < from.sigma, got " +
                     std::to_string(to.sigma) + " >= " + std::to_string(from.sigma));
  const double dsigma = to.sigma - from.sigma;  // negative
  const double ds = to.s - from.s;
  double best = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double axi = std::abs(grid.xi_of_index(i));
    best = std::max(best, std::exp(dsigma * axi) * std::pow(1.0 + axi, ds));
  }
  return best;
}

RadiusEstimate estimate_radius(const SpectralField& f, const RadiusFitOptions& opt) {
  if (!(opt.noise_floor_rel > 0.0) || !(opt.cap > 0.0) || !(opt.xi_lo >= 0.0))
    throw InputError("estimate_radius: bad fit options");
  double peak = 0.0;
  for (const complex& c : f.coeffs) peak = std::max(peak, std::abs(c));
  const double floor_abs = opt.noise_floor_rel * peak;

  std::vector<double> xs, ys;
  xs.reserve(f.coeffs.size());
  ys.reserve(f.coeffs.size());
  const int n = f.grid.n_points;
  for (int i = 0; i < n; ++i) {
    const double axi = std::abs(f.grid.xi_of_index(i));
    const double amp = std::abs(f.coeffs[i]);
    if (axi < opt.xi_lo || !(amp > floor_abs)) continue;
    xs.push_back(axi);
    ys.push_back(std::log(amp));
  }
  if ((int)xs.size() < 8)
    throw GuardError("estimate_radius: only " + std::to_string(xs.size()) +
                     " modes qualify (need 8); field too small or window too tight");

  const size_t m = xs.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < m; ++i) {
    const double dxv = xs[i] - mx, dyv = ys[i] - my;
    sxx += dxv * dxv;
    sxy += dxv * dyv;
    syy += dyv * dyv;
  }
  if (!(sxx > 0.0))
    throw GuardError("estimate_radius: degenerate fit window (single frequency)");
  const double slope = sxy / sxx;
  const double ss_res = syy - sxy * sxy / sxx;
  const double r2 = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;

  RadiusEstimate est;
  est.sigma_hat = -slope;
  est.at_cap = est.sigma_hat > opt.cap;
  if (est.at_cap) est.sigma_hat = opt.cap;
  est.fit_xi_lo = *std::min_element(xs.begin(), xs.end());
  est.fit_xi_hi = *std::max_element(xs.begin(), xs.end());
  est.r_squared = r2;
  est.noise_floor_abs = floor_abs;
  est.n_modes = (int)m;
  return est;
}

}  // namespace kdvlab
