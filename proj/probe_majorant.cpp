#include <cmath>
#include <cstdio>
#include <numbers>

#include "kdvlab/almost_conservation.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/gevrey.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/presets.hpp"
#include "kdvlab/rng.hpp"
#include "kdvlab/spectral.hpp"

using namespace kdvlab;

int main() {
  const GridSpec grid = GridSpec::make(1024, 40.0 * std::numbers::pi);
  Rng rng(555001);
  const double rhos[] = {0.25, 0.5, 0.74};
  const double sigmas[] = {0.05, 0.2};
  for (int field_i = 0; field_i < 20; ++field_i) {
    const RealField u =
        make_random_band(grid, rng.uniform(0.5, 4.0), rng.uniform(0.3, 1.5), rng);
    const SpectralField f = forward(u);
    double peak_u = 0.0;
    for (const complex& c : f.coeffs) peak_u = std::max(peak_u, std::abs(c));
    for (double sigma : sigmas) {
      const SpectralField source = commutator_source(f, sigma);
      double peak_src = 0.0;
      for (const complex& c : source.coeffs)
        peak_src = std::max(peak_src, std::abs(c));
      for (double rho : rhos) {
        const SpectralField maj = commutator_majorant(f, sigma, rho);
        for (int i = 0; i < grid.n_points; ++i) {
          const double lhs = std::abs(source.coeffs[i]);
          const double rhs = maj.coeffs[i].real();
          if (lhs > rhs * (1.0 + 1e-12) + 1e-250) {
            std::printf(
                "field %2d rho %.2f sigma %.2f k %5d xi %8.2f  lhs %.3e rhs "
                "%.3e  excess %.3e  peak_u %.3e peak_src %.3e\n",
                field_i, rho, sigma, grid.k_of_index(i), grid.xi_of_index(i),
                lhs, rhs, lhs - rhs, peak_u, peak_src);
          }
        }
      }
    }
  }
  return 0;
}
