#include "kdvlab/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kdvlab/errors.hpp"
#include "kdvlab/gevrey.hpp"

namespace kdvlab {

SpaceTimeGrid SpaceTimeGrid::make(int n_xi, int n_tau, double dxi, double dtau) {
  auto ok_axis = [](int n) { return n >= 2 && n <= 256 && n % 2 == 0; };
  if (!ok_axis(n_xi) || !ok_axis(n_tau))
    throw InputError("space-time grid axes must be even and in [2, 256]");
  if (!(dxi > 0.0) || !(dtau > 0.0) || !std::isfinite(dxi) || !std::isfinite(dtau))
    throw InputError("space-time grid spacings must be positive and finite");
  return SpaceTimeGrid{n_xi, n_tau, dxi, dtau};
}

SpaceTimeField make_space_time_field(const SpaceTimeGrid& grid) {
  SpaceTimeField f;
  f.grid = grid;
  f.values.assign(size_t(grid.n_xi) * grid.n_tau, complex(0.0, 0.0));
  return f;
}

double xsb_norm(const SpaceTimeField& f, const XsbParams& p) {
  const SpaceTimeGrid& g = f.grid;
  if (!(p.sigma >= 0.0)) throw InputError("xsb_norm: sigma must be >= 0");
  if (p.sigma * g.xi_abs_max() > kGevreyExponentGuard)
    throw GuardError("xsb_norm: sigma * max|xi| = " +
                     std::to_string(p.sigma * g.xi_abs_max()) +
                     " exceeds guard " + std::to_string(kGevreyExponentGuard));
  double acc = 0.0;
  for (int i = 0; i < g.n_xi; ++i) {
    const double xi = g.xi(i);
    const double wx =
        std::exp(p.sigma * std::abs(xi)) * std::pow(1.0 + std::abs(xi), p.s);
    for (int j = 0; j < g.n_tau; ++j) {
      const double w =
          wx * std::pow(1.0 + std::abs(g.tau(j) - xi * xi * xi), p.b);
      acc += w * w * std::norm(f.at(i, j));
    }
  }
  return std::sqrt(acc * g.dxi * g.dtau);
}

SpaceTimeField apply_brho(const SpaceTimeField& u, const SpaceTimeField& v,
                          double rho) {
  if (!(u.grid == v.grid)) throw GuardError("apply_brho: grid mismatch");
  if (!(rho >= 0.0) || !(rho <= 1.0))
    throw InputError("apply_brho: rho must lie in [0,1]");
  const SpaceTimeGrid& g = u.grid;
  const int nx = g.n_xi, nt = g.n_tau;

  // weight(i, k) = min(|xi_i - xi_k|, |xi_k|)^rho; rho = 0 makes every
  // weight exactly 1 (pow(0,0) = 1), i.e. the plain convolution.
  std::vector<double> weight(size_t(nx) * nx);
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < nx; ++k)
      weight[size_t(i) * nx + k] = std::pow(
          std::min(std::abs(g.xi(i) - g.xi(k)), std::abs(g.xi(k))), rho);

  SpaceTimeField out = make_space_time_field(g);
  const double measure = g.dxi * g.dtau;
  for (int i = 0; i < nx; ++i) {
    for (int k = 0; k < nx; ++k) {
      const int iu = i - k + nx / 2;  // index of frequency xi_i - xi_k
      if (iu < 0 || iu >= nx) continue;
      const double w = weight[size_t(i) * nx + k];
      if (w == 0.0) continue;
      for (int j = 0; j < nt; ++j) {
        complex acc = 0.0;
        for (int l = 0; l < nt; ++l) {
          const int ju = j - l + nt / 2;
          if (ju < 0 || ju >= nt) continue;
          const complex uv = u.at(iu, ju);
          const complex vv = v.at(k, l);
          if (uv == 0.0 || vv == 0.0) continue;
          acc += uv * vv;
        }
        out.at(i, j) += w * acc;
      }
    }
  }
  for (complex& c : out.values) c *= measure;
  return out;
}

double kpv_ratio(const SpaceTimeField& u, const SpaceTimeField& v,
                 double sigma, double s, double b, double bprime) {
  SpaceTimeField conv = apply_brho(u, v, 0.0);
  for (int i = 0; i < conv.grid.n_xi; ++i) {
    const complex d(0.0, conv.grid.xi(i));
    for (int j = 0; j < conv.grid.n_tau; ++j) conv.at(i, j) *= d;
  }
  const double num = xsb_norm(conv, XsbParams{sigma, s, bprime - 1.0});
  const double den = xsb_norm(u, XsbParams{sigma, s, b}) *
                     xsb_norm(v, XsbParams{sigma, s, b});
  if (!(den > 0.0)) throw GuardError("kpv_ratio: zero-norm input");
  return num / den;
}

std::string_view to_string(CounterexampleVariant v) {
  switch (v) {
    case CounterexampleVariant::xi_power: return "xi_power";
    case CounterexampleVariant::min_symbol: return "min_symbol";
    case CounterexampleVariant::high_factor_power: return "high_factor_power";
  }
  throw InputError("unknown counterexample variant");
}

CounterexampleVariant counterexample_variant_from_string(std::string_view name) {
  if (name == "xi_power") return CounterexampleVariant::xi_power;
  if (name == "min_symbol") return CounterexampleVariant::min_symbol;
  if (name == "high_factor_power") return CounterexampleVariant::high_factor_power;
  throw ConfigError("unknown counterexample variant '" + std::string(name) +
                    "', expected xi_power | min_symbol | high_factor_power");
}

CounterexampleResult counterexample_ratio(const CounterexampleSpec& spec) {
  if (!(spec.big_n >= 8.0))
    throw GuardError(
        "counterexample: N below 8 collapses the high-low frequency "
        "separation the slab construction relies on");
  if (!(spec.rho >= 0.0) || !(spec.rho <= 1.0))
    throw InputError("counterexample: rho must lie in [0,1]");
  if (spec.res_xi < 2 || spec.res_xi1 < 2 || spec.res_mu < 2 || spec.res_mu1 < 2)
    throw InputError("counterexample: quadrature resolutions must be >= 2");

  const double N = spec.big_n;
  const double xi_lo = N, xi_hi = 2.0 * N;
  const double xi1_lo = 1.0 / (N * N), xi1_hi = 2.0 / (N * N);

  const double hxi = (xi_hi - xi_lo) / spec.res_xi;
  const double hxi1 = (xi1_hi - xi1_lo) / spec.res_xi1;
  const double hmu = 2.0 / spec.res_mu;
  const double hmu1 = 2.0 / spec.res_mu1;
  const double cell = hxi * hxi1 * hmu * hmu1;

  // Modulation weight product stays inside [2^-1 51^-3/4, 1]; leaving it
  // means the slabs were mis-specified.
  const double kappa2_floor = 0.5 * std::pow(51.0, -0.75);

  CounterexampleResult r;
  r.kappa2_lo = std::numeric_limits<double>::infinity();
  r.kappa2_hi = 0.0;

  double integral = 0.0;
  for (int a = 0; a < spec.res_xi; ++a) {
    const double xi = xi_lo + (a + 0.5) * hxi;
    for (int b = 0; b < spec.res_xi1; ++b) {
      const double xi1 = xi1_lo + (b + 0.5) * hxi1;
      const double xi2 = xi - xi1;
      // High-factor support [N, 2N]; midpoints never reach the O(N^-2)
      // sliver at the edges once N >= 8.
      if (xi2 < xi_lo || xi2 > xi_hi) continue;
      double symbol = 0.0;
      switch (spec.variant) {
        case CounterexampleVariant::xi_power:
          symbol = std::pow(std::abs(xi), spec.rho);
          break;
        case CounterexampleVariant::min_symbol:
          symbol = std::pow(std::min(std::abs(xi2), std::abs(xi1)), spec.rho);
          break;
        case CounterexampleVariant::high_factor_power:
          symbol = std::pow(std::abs(xi2), spec.rho);
          break;
      }
      const double shift = 3.0 * xi * xi1 * xi2;
      for (int c = 0; c < spec.res_mu; ++c) {
        const double mu = -1.0 + (c + 0.5) * hmu;
        for (int d = 0; d < spec.res_mu1; ++d) {
          const double mu1 = -1.0 + (d + 0.5) * hmu1;
          const double m3 = mu - mu1 + shift;
          const double am3 = std::abs(m3);
          if (am3 > 50.0)
            throw GuardError(
                "counterexample: forced modulation left the [-50, 50] "
                "interior margin");
          r.max_abs_m3 = std::max(r.max_abs_m3, am3);
          const double kappa2 = std::pow(1.0 + std::abs(mu), -0.25) *
                                std::pow(1.0 + std::abs(mu1), -0.75) *
                                std::pow(1.0 + am3, -0.75);
          if (kappa2 < kappa2_floor * (1.0 - 1e-12) || kappa2 > 1.0 + 1e-12)
            throw GuardError("counterexample: modulation weight outside its "
                             "guaranteed range");
          r.kappa2_lo = std::min(r.kappa2_lo, kappa2);
          r.kappa2_hi = std::max(r.kappa2_hi, kappa2);
          integral += xi * symbol * kappa2 * cell;
        }
      }
    }
  }

  r.integral = integral;
  r.norm_product = std::sqrt(600.0);
  r.ratio = integral / r.norm_product;
  return r;
}

}  // namespace kdvlab
