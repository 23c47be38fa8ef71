#pragma once

#include <cmath>
#include <utility>

#include "kdvlab/errors.hpp"
#include "kdvlab/grid.hpp"

namespace kdvlab {

// Unitary transform convention:
//   u_hat(xi_k) = (2 pi)^{-1/2} dx sum_j u(x_j) e^{-i xi_k x_j}
//   u(x_j)     = (2 pi)^{-1/2} dxi sum_k u_hat(xi_k) e^{+i xi_k x_j}
// With these weights dx sum |u|^2 == dxi sum |u_hat|^2 exactly, so the
// G^{0,0} norm coincides with the physical L2 norm. The Nyquist mode
// (k = -n/2) has no conjugate partner and is forced to zero.
SpectralField forward(const RealField& u);

// Checks conjugate symmetry (tolerance 1e-10 relative) before transforming.
RealField inverse(const SpectralField& f);

SpectralField dealias(const SpectralField& f);

double l2_norm(const RealField& u);
double l2_norm(const SpectralField& f);

// Max |c(-k) - conj(c(k))| over pairs plus the Nyquist magnitude, relative
// to max |c|; zero field reports 0.
double symmetry_defect(const SpectralField& f);

// f multiplied mode-wise by symbol(xi). Throws GuardError if the symbol is
// non-finite at any represented frequency.
template <class Symbol>
SpectralField apply_multiplier(const SpectralField& f, Symbol&& symbol) {
  SpectralField out = f;
  const int n = f.grid.n_points;
  for (int i = 0; i < n; ++i) {
    const complex m = symbol(f.grid.xi_of_index(i));
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
      throw GuardError("apply_multiplier: symbol non-finite at xi = " +
                       std::to_string(f.grid.xi_of_index(i)));
    out.coeffs[i] *= m;
  }
  return out;
}

SpectralField& operator+=(SpectralField& a, const SpectralField& b);
SpectralField& operator-=(SpectralField& a, const SpectralField& b);
SpectralField& operator*=(SpectralField& a, double s);
SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

}  // namespace kdvlab
