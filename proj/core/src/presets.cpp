#include "kdvlab/presets.hpp"

#include <cmath>
#include <numbers>

#include "kdvlab/errors.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {
namespace {

double wrap(double y, double length) {
  return y - length * std::round(y / length);
}

double sech(double z) { return 1.0 / std::cosh(z); }

}  // namespace

double soliton_value(double x, double t, double kappa, double x0, double length) {
  const double z = wrap(x - 4.0 * kappa * kappa * t - x0, length);
  const double s = sech(kappa * z);
  return 12.0 * kappa * kappa * s * s;
}

RealField make_soliton(const GridSpec& grid, double kappa, double x0) {
  if (!(kappa > 0.0)) throw InputError("soliton: kappa must be positive");
  RealField u = make_real_field(grid);
  for (int j = 0; j < grid.n_points; ++j)
    u.samples[j] = soliton_value(grid.x(j), 0.0, kappa, x0, grid.length);
  return u;
}

RealField make_two_soliton(const GridSpec& grid, double kappa1, double x1,
                           double kappa2, double x2) {
  RealField a = make_soliton(grid, kappa1, x1);
  const RealField b = make_soliton(grid, kappa2, x2);
  for (int j = 0; j < grid.n_points; ++j) a.samples[j] += b.samples[j];
  return a;
}

RealField make_gaussian(const GridSpec& grid, double amplitude, double center) {
  RealField u = make_real_field(grid);
  for (int j = 0; j < grid.n_points; ++j) {
    const double z = grid.x(j) - center;
    u.samples[j] = amplitude * std::exp(-z * z);
  }
  return u;
}

RealField make_lorentzian(const GridSpec& grid) {
  // sum_m 1/(1+(x+mL)^2) = (pi/L) sinh(2pi/L) / (cosh(2pi/L) - cos(2pi x/L))
  const double L = grid.length;
  const double q = 2.0 * std::numbers::pi / L;
  RealField u = make_real_field(grid);
  for (int j = 0; j < grid.n_points; ++j) {
    const double x = grid.x(j);
    u.samples[j] = (std::numbers::pi / L) * std::sinh(q) /
                   (std::cosh(q) - std::cos(q * x));
  }
  return u;
}

RealField make_sech2(const GridSpec& grid) {
  RealField u = make_real_field(grid);
  for (int j = 0; j < grid.n_points; ++j) {
    const double s = sech(grid.x(j));
    u.samples[j] = s * s;
  }
  return u;
}

RealField make_random_band(const GridSpec& grid, double amplitude, double decay,
                           Rng& rng) {
  if (!(amplitude >= 0.0) || !(decay >= 0.0))
    throw InputError("random datum: amplitude and decay must be >= 0");
  SpectralField f = make_spectral_field(grid);
  const int kband = grid.n_points / 6;
  f.coeffs[grid.index_of_k(0)] = complex(rng.normal(), 0.0);
  for (int k = 1; k <= kband; ++k) {
    const double env = std::exp(-decay * grid.xi_of_k(k));
    const complex c(env * rng.normal(), env * rng.normal());
    f.coeffs[grid.index_of_k(k)] = c;
    f.coeffs[grid.index_of_k(-k)] = std::conj(c);
  }
  RealField u = inverse(f);
  double peak = 0.0;
  for (double v : u.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0 && amplitude > 0.0) {
    const double s = amplitude / peak;
    for (double& v : u.samples) v *= s;
  } else if (amplitude == 0.0) {
    for (double& v : u.samples) v = 0.0;
  }
  return u;
}

RealField make_zero(const GridSpec& grid) { return make_real_field(grid); }

}  // namespace kdvlab
