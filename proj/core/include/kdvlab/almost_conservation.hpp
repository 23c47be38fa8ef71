#pragma once

#include <span>
#include <vector>

#include "kdvlab/gevrey.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/solver.hpp"

namespace kdvlab {

// Two sides of the elementary symbol inequality behind the commutator bound:
//   e^{sigma|a|} e^{sigma|b|} - e^{sigma|a+b|}
//     <= (2 sigma min(|a|,|b|))^theta e^{sigma|a|} e^{sigma|b|},
// theta in [0,1]. The left side vanishes when a and b share a sign.
struct SymbolGap {
  double lhs = 0.0;
  double rhs = 0.0;
};

SymbolGap symbol_gap(double sigma, double theta, double alpha, double beta);

// F = 1/2 d/dx ( (e^{sigma|D|} u)^2 - e^{sigma|D|}(u^2) ): the source term by
// which the smoothed solution fails the PDE. Exactly zero at sigma = 0.
// The input is dealiased first; products are then alias-free on the retained
// band, so the convolution bound below holds mode-for-mode.
SpectralField commutator_source(const SpectralField& f, double sigma);

// min(|xi - eta|, |eta|)^rho weighted convolution of two spectra with the
// product measure (2 pi)^{-1/2} dxi sum_eta. Direct summation.
SpectralField brho_spatial(const SpectralField& a, const SpectralField& b,
                           double rho);

// Majorant side of the pointwise commutator bound
//   |F_hat(xi)| <= 1/2 (2 sigma)^rho |xi| (B_rho(|U|,|U|))(xi),
// where |U| carries coefficients e^{sigma|xi|} |u_hat|.
SpectralField commutator_majorant(const SpectralField& f, double sigma, double rho);

struct GrowthSeries {
  std::vector<double> sigma;
  std::vector<double> growth;     // G(sigma) = sup_t M_sigma^2(t) - M_sigma^2(0)
  std::vector<char> used;         // entered the fit (above the noise cut)
  double slope = 0.0;             // d log G / d log sigma
  double intercept = 0.0;         // log G at log sigma = 0
  int n_used = 0;
  double m0 = 0.0;                // G^{0,0} norm of the datum
};

// Evolves the datum once over [0, delta] recording every step and measures
// the squared-norm growth for each sigma (strictly descending grid). Points
// with G below 1e-14 are excluded from the log-log fit as fp noise; fewer
// than 2 usable points is an error.
GrowthSeries track_growth(const RealField& u0, double delta,
                          std::span<const double> sigma_grid,
                          const SolverConfig& base);

}  // namespace kdvlab
