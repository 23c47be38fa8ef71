#pragma once

#include "kdvlab/grid.hpp"

namespace kdvlab {

// Weight e^{sigma |xi|} (1+|xi|)^s. sigma >= 0 for norms; apply_gevrey also
// accepts negative sigma (smoothing direction).
struct GevreyParams {
  double sigma = 0.0;
  double s = 0.0;
};

// Exponent cap for e^{sigma |xi|}: sigma * xi_max above this refuses to
// evaluate rather than produce overflowed weights.
inline constexpr double kGevreyExponentGuard = 300.0;

// sqrt( sum_k e^{2 sigma |xi_k|} (1+|xi_k|)^{2s} |u_hat_k|^2 dxi ).
double gevrey_norm(const SpectralField& f, const GevreyParams& p);

// Mode-wise multiplication by e^{sigma |xi|} (sigma signed).
SpectralField apply_gevrey(const SpectralField& f, double sigma);

// Operator norm of the inclusion G^{from} -> G^{to} on the grid:
// max over grid frequencies of e^{(to.sigma - from.sigma)|xi|}
// (1+|xi|)^{to.s - from.s}. Requires to.sigma < from.sigma.
double embedding_constant(const GridSpec& grid, const GevreyParams& from,
                          const GevreyParams& to);

struct RadiusFitOptions {
  double noise_floor_rel = 1e-12;
  double xi_lo = 2.0;
  double cap = 3.0;
};

struct RadiusEstimate {
  double sigma_hat = 0.0;   // minus the fitted slope; when at_cap, >= cap held
  bool at_cap = false;
  double fit_xi_lo = 0.0;   // actual window of qualifying modes
  double fit_xi_hi = 0.0;
  double r_squared = 0.0;
  double noise_floor_abs = 0.0;
  int n_modes = 0;
};

// Least-squares fit of log|u_hat_k| against |xi_k| over modes with
// |u_hat_k| > noise_floor_rel * max|u_hat| and |xi_k| >= xi_lo.
// Fewer than 8 qualifying modes is an error (GuardError).
RadiusEstimate estimate_radius(const SpectralField& f,
                               const RadiusFitOptions& opt = {});

}  // namespace kdvlab
