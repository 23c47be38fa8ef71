#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace kdvlab {

using complex = std::complex<double>;

// Uniform periodic grid on [-L/2, L/2), n a power of two.
// Frequencies xi_k = 2 pi k / L for k in {-n/2, ..., n/2 - 1}; spectral
// storage is in ascending-k order, index i <-> k = i - n/2.
struct GridSpec {
  int n_points = 0;
  double length = 0.0;

  static GridSpec make(int n_points, double length);

  double dx() const { return length / n_points; }
  double dxi() const { return 2.0 * std::numbers::pi / length; }
  double x(int j) const { return -0.5 * length + j * dx(); }
  int k_of_index(int i) const { return i - n_points / 2; }
  int index_of_k(int k) const { return k + n_points / 2; }
  double xi_of_index(int i) const { return dxi() * k_of_index(i); }
  double xi_of_k(int k) const { return dxi() * k; }
  // Largest frequency magnitude represented on the grid (the Nyquist mode).
  double xi_max() const { return dxi() * (n_points / 2); }
  // 2/3-rule cutoff: modes with |k| > n/3 are dropped by dealias().
  int dealias_k_max() const { return n_points / 3; }

  bool operator==(const GridSpec&) const = default;
};

struct RealField {
  GridSpec grid;
  std::vector<double> samples;  // size grid.n_points
};

struct SpectralField {
  GridSpec grid;
  std::vector<complex> coeffs;  // size grid.n_points, index i <-> k = i - n/2

  complex at_k(int k) const { return coeffs[grid.index_of_k(k)]; }
};

RealField make_real_field(const GridSpec& grid);
SpectralField make_spectral_field(const GridSpec& grid);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace kdvlab
