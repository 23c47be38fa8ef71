#include "kdvlab/grid.hpp"

#include <cmath>
#include <string>

#include "kdvlab/errors.hpp"

namespace kdvlab {

GridSpec GridSpec::make(int n_points, double length) {
  if (n_points < 8 || (n_points & (n_points - 1)) != 0)
    throw InputError("grid: n_points must be a power of two >= 8, got " +
                     std::to_string(n_points));
  if (!(length > 0.0) || !std::isfinite(length))
    throw InputError("grid: length must be positive and finite");
  return GridSpec{n_points, length};
}

RealField make_real_field(const GridSpec& grid) {
  return RealField{grid, std::vector<double>(grid.n_points, 0.0)};
}

SpectralField make_spectral_field(const GridSpec& grid) {
  return SpectralField{grid, std::vector<complex>(grid.n_points)};
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b))
    throw GuardError(std::string(what) + ": grid mismatch (" +
                     std::to_string(a.n_points) + "/" + std::to_string(a.length) +
                     " vs " + std::to_string(b.n_points) + "/" +
                     std::to_string(b.length) + ")");
}

}  // namespace kdvlab
