#pragma once

#include <string_view>
#include <vector>

#include "kdvlab/grid.hpp"

namespace kdvlab {

// Uniform symmetric space-time frequency grid. xi_i = (i - n_xi/2) dxi,
// tau_j = (j - n_tau/2) dtau, so differences of grid points are again grid
// points and discrete convolution needs no interpolation. Axes are capped at
// 256 nodes: the convolution below is direct summation, cost
// O((n_xi n_tau)^2).
struct SpaceTimeGrid {
  int n_xi = 0;
  int n_tau = 0;
  double dxi = 0.0;
  double dtau = 0.0;

  static SpaceTimeGrid make(int n_xi, int n_tau, double dxi, double dtau);

  double xi(int i) const { return (i - n_xi / 2) * dxi; }
  double tau(int j) const { return (j - n_tau / 2) * dtau; }
  double xi_abs_max() const { return (n_xi / 2) * dxi; }

  bool operator==(const SpaceTimeGrid&) const = default;
};

struct SpaceTimeField {
  SpaceTimeGrid grid;
  std::vector<complex> values;  // row-major, index = i * n_tau + j

  complex& at(int i, int j) { return values[size_t(i) * grid.n_tau + j]; }
  const complex& at(int i, int j) const {
    return values[size_t(i) * grid.n_tau + j];
  }
};

SpaceTimeField make_space_time_field(const SpaceTimeGrid& grid);

// Weight e^{sigma|xi|} (1+|xi|)^s (1+|tau - xi^3|)^b.
struct XsbParams {
  double sigma = 0.0;
  double s = 0.0;
  double b = 0.0;
};

// sqrt( sum w^2 |f|^2 dxi dtau ). Subject to the usual exponent guard on
// sigma * max|xi|.
double xsb_norm(const SpaceTimeField& f, const XsbParams& p);

// out(xi, tau) = dxi dtau sum_{eta, lambda} min(|xi - eta|, |eta|)^rho
//                u(xi - eta, tau - lambda) v(eta, lambda),
// terms whose difference index leaves the grid contribute zero (linear, not
// cyclic, convolution). rho = 0 gives the plain product convolution. The
// plain dxi dtau measure is a fixed convention here; every consumer takes
// ratios, so the constant drops out.
SpaceTimeField apply_brho(const SpaceTimeField& u, const SpaceTimeField& v,
                          double rho);

// || i xi . (u*v) ||_{sigma, s, bprime - 1} / (||u||_{sigma,s,b} ||v||_{sigma,s,b})
// with the plain convolution. Zero-norm inputs are an error.
double kpv_ratio(const SpaceTimeField& u, const SpaceTimeField& v,
                 double sigma, double s, double b, double bprime);

// Symbol inserted next to the derivative in the slab quadrature.
enum class CounterexampleVariant {
  xi_power,           // |xi|^rho: full output frequency
  min_symbol,         // min(|xi - xi1|, |xi1|)^rho
  high_factor_power,  // |xi - xi1|^rho
};

std::string_view to_string(CounterexampleVariant v);
CounterexampleVariant counterexample_variant_from_string(std::string_view name);

// Semi-analytic probe of the derivative bilinear form on a high-low slab
// pair. One factor occupies xi in [N, 2N] with modulation slab [-75, 75],
// the other xi1 in [N^-2, 2N^-2] with modulation in [-1, 1]; the dual slab
// sits at xi in [N, 2N], modulation in [-1, 1]. Factors carry inverse
// modulation weights so their space-time norms are the slab areas, making
// the norm product sqrt(600) independent of N. The remaining integral
//   I = int xi S(xi, xi1) (1+|mu|)^{-1/4} (1+|mu1|)^{-3/4} (1+|m3|)^{-3/4}
// over (xi, xi1, mu, mu1), with m3 = mu - mu1 + 3 xi xi1 (xi - xi1) the
// modulation forced on the high factor, is evaluated by the midpoint rule.
// Doubling N scales the ratio by 2^rho for the xi_power and
// high_factor_power symbols but by 2^-2rho for min_symbol, up to O(N^-3).
struct CounterexampleSpec {
  double big_n = 8.0;  // frequency separation parameter, >= 8
  double rho = 0.5;
  CounterexampleVariant variant = CounterexampleVariant::xi_power;
  int res_xi = 64;
  int res_xi1 = 16;
  int res_mu = 16;
  int res_mu1 = 16;
};

struct CounterexampleResult {
  double ratio = 0.0;         // integral / norm_product
  double integral = 0.0;
  double norm_product = 0.0;  // sqrt(600), recorded for the record
  double max_abs_m3 = 0.0;    // stays below 50 by construction
  double kappa2_lo = 0.0;     // observed range of the modulation weight
  double kappa2_hi = 0.0;     // product, inside [2^-1 51^-3/4, 1]
};

CounterexampleResult counterexample_ratio(const CounterexampleSpec& spec);

}  // namespace kdvlab
