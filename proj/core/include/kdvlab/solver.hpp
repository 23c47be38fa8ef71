#pragma once

#include <vector>

#include "kdvlab/gevrey.hpp"
#include "kdvlab/grid.hpp"

namespace kdvlab {

// u_t + u_xxx + u u_x = 0, spectral form u_hat_t = i xi^3 u_hat - (i xi/2) (u^2)^hat.
// Time stepping: classical RK4 on the integrating-factor variable
// v_hat = e^{-i xi^3 t} u_hat (the linear flow is handled exactly).

struct SolverConfig {
  double dt = 1e-3;       // <= 0.1 is the supported accuracy envelope
  double t_end = 10.0;
  bool dealias_on = true;
  int record_every = 100;  // in steps
};

// Max over recorded times of |Q(t) - Q(0)| / max(|Q(0)|, 1); the unit floor
// keeps data with vanishing invariants from dividing by roundoff.
struct ConservationReport {
  double mass_drift = 0.0;         // integral of u
  double momentum_drift = 0.0;     // integral of u^2
  double hamiltonian_drift = 0.0;  // integral of u_x^2/2 - u^3/6
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  ConservationReport conservation;
};

// Airy group W(t): multiplier e^{i t xi^3}. A Gevrey-norm isometry.
SpectralField free_evolve(const SpectralField& f, double t);

// -(1/2) d/dx (u^2) in spectral form; the square is dealiased when requested.
SpectralField nonlinear_rhs(const SpectralField& f, bool dealias_on = true);

// One integrating-factor RK4 step.
SpectralField step(const SpectralField& f, double dt, bool dealias_on = true);

double mass(const SpectralField& f);
double momentum(const SpectralField& f);
double hamiltonian(const SpectralField& f);

// Integrates the datum to t_end recording every record_every steps (state at
// t = 0 and t = t_end always included). Throws InstabilityError when the
// solution stops being finite, GuardError when the datum is unresolved
// (spectral tail above 1e-12 of the peak).
Trajectory evolve(const RealField& u0, const SolverConfig& cfg);

struct PicardOptions {
  int slices = 64;   // trapezoid subintervals on [0, delta]
  int n_max = 25;
  double tol = 1e-10;
};

struct PicardResult {
  std::vector<double> slice_times;
  std::vector<SpectralField> limit;       // last iterate on the slice grid
  std::vector<SpectralField> at_delta;    // u^{(n)}(delta), n = 0, 1, ...
  std::vector<double> increments;         // d_n = sup_t ||u^(n) - u^(n-1)||_G
  std::vector<double> factors;            // d_{n+1} / d_n
  bool converged = false;
};

// Duhamel fixed-point iteration
//   u^(0) = W(t) u0,
//   u^(n) = W(t) u0 - 1/2 int_0^t W(t-t') d/dx (u^(n-1))^2 dt'
// on a uniform slice grid with trapezoid quadrature. Increments are measured
// in G^{p.sigma, p.s}. Three consecutive non-contracting factors raise
// NoContractionError (message carries delta).
PicardResult picard_iterate(const RealField& u0, double delta,
                            const GevreyParams& p, const PicardOptions& opt = {});

// Grönwall diagnostic: max over recorded t of
//   ||u-v||(t) / ( ||u-v||(0) * exp( int_0^t ||u_x||_inf + ||v_x||_inf ) ).
// At most 1 for the exact flow; a value near or below 1 is expected.
double uniqueness_gap_ratio(const RealField& u0, const RealField& v0,
                            const SolverConfig& cfg);

}  // namespace kdvlab
