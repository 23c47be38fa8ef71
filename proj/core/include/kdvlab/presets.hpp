#pragma once

#include "kdvlab/grid.hpp"
#include "kdvlab/rng.hpp"

namespace kdvlab {

// Traveling-wave solution of u_t + u_xxx + u u_x = 0:
// u(x,t) = 12 kappa^2 sech^2(kappa (x - 4 kappa^2 t - x0)), wrapped onto the
// torus. Holomorphic in |Im z| < pi / (2 kappa).
double soliton_value(double x, double t, double kappa, double x0, double length);
RealField make_soliton(const GridSpec& grid, double kappa, double x0 = 0.0);
RealField make_two_soliton(const GridSpec& grid, double kappa1, double x1,
                           double kappa2, double x2);

// amplitude * e^{-(x-center)^2}
RealField make_gaussian(const GridSpec& grid, double amplitude = 1.0,
                        double center = 0.0);

// Periodization of 1/(1+x^2): sum_m 1/(1+(x+mL)^2) in closed form. Its grid
// spectrum matches sqrt(pi/2) e^{-|xi|} to aliasing accuracy even though the
// raw Lorentzian decays only polynomially.
RealField make_lorentzian(const GridSpec& grid);

// sech^2(x) (radius pi/2).
RealField make_sech2(const GridSpec& grid);

// Real field with random band-limited spectrum ~ e^{-decay |xi|} on
// |k| <= n/6, rescaled so max |u| = amplitude.
RealField make_random_band(const GridSpec& grid, double amplitude, double decay,
                           Rng& rng);

RealField make_zero(const GridSpec& grid);

}  // namespace kdvlab
