#include "kdvlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>

namespace kdvlab {
namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014326779;  // (2 pi)^{-1/2}
constexpr double sqrt_2pi = 2.5066282746310005024;

struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Plan creation is not thread-safe in FFTW; executing a plan on new arrays is.
// Plans are cached per size and made with FFTW_UNALIGNED so they can run on
// any std::vector storage.
const Plans& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, Plans> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<complex> a(n), b(n);
    Plans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()),
                             FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()),
                             FFTW_BACKWARD, flags);
    it = cache.emplace(n, p).first;
  }
  return it->second;
}

void run_plan(fftw_plan plan, std::vector<complex>& in, std::vector<complex>& out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

SpectralField forward(const RealField& u) {
  const GridSpec& g = u.grid;
  const int n = g.n_points;
  if ((int)u.samples.size() != n) throw InputError("forward: sample count != n_points");
  std::vector<complex> buf(n), dft(n);
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(u.samples[j]))
      throw InputError("forward: non-finite sample at index " + std::to_string(j));
    buf[j] = u.samples[j];
  }
  run_plan(plans_for(n).fwd, buf, dft);

  // x_j = -L/2 + j dx shifts each DFT bin by e^{i pi k} = (-1)^k.
  SpectralField f = make_spectral_field(g);
  const double scale = inv_sqrt_2pi * g.dx();
  for (int i = 0; i < n; ++i) {
    const int k = g.k_of_index(i);
    const double sign = (k & 1) ? -1.0 : 1.0;
    f.coeffs[i] = scale * sign * dft[(k + n) % n];
  }
  f.coeffs[0] = 0.0;  // Nyquist has no conjugate partner
  return f;
}

double symmetry_defect(const SpectralField& f) {
  const int n = f.grid.n_points;
  double peak = 0.0;
  for (const complex& c : f.coeffs) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0.0;
  double defect = std::abs(f.coeffs[0]);  // Nyquist must vanish
  for (int k = 1; k < n / 2; ++k) {
    const complex c_pos = f.coeffs[f.grid.index_of_k(k)];
    const complex c_neg = f.coeffs[f.grid.index_of_k(-k)];
    defect = std::max(defect, std::abs(c_neg - std::conj(c_pos)));
  }
  const complex c0 = f.coeffs[f.grid.index_of_k(0)];
  defect = std::max(defect, std::abs(c0.imag()));
  return defect / peak;
}

RealField inverse(const SpectralField& f) {
  const GridSpec& g = f.grid;
  const int n = g.n_points;
  if ((int)f.coeffs.size() != n) throw InputError("inverse: coeff count != n_points");
  const double defect = symmetry_defect(f);
  if (defect > 1e-10) {
    char msg[96];
    std::snprintf(msg, sizeof(msg),
                  "inverse: conjugate symmetry violated, relative defect %.3e",
                  defect);
    throw RepresentationError(msg);
  }

  std::vector<complex> dft(n), buf(n);
  const double scale = sqrt_2pi / g.dx();
  for (int i = 0; i < n; ++i) {
    const int k = g.k_of_index(i);
    const double sign = (k & 1) ? -1.0 : 1.0;
    dft[(k + n) % n] = scale * sign * f.coeffs[i];
  }
  dft[n / 2] = 0.0;  // storage index of the Nyquist bin in DFT order
  run_plan(plans_for(n).bwd, dft, buf);

  RealField u = make_real_field(g);
  const double inv_n = 1.0 / n;
  for (int j = 0; j < n; ++j) u.samples[j] = buf[j].real() * inv_n;
  return u;
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  const int kmax = f.grid.dealias_k_max();
  const int n = f.grid.n_points;
  for (int i = 0; i < n; ++i) {
    if (std::abs(f.grid.k_of_index(i)) > kmax) out.coeffs[i] = 0.0;
  }
  return out;
}

double l2_norm(const RealField& u) {
  double s = 0.0;
  for (double v : u.samples) s += v * v;
  return std::sqrt(s * u.grid.dx());
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const complex& c : f.coeffs) s += std::norm(c);
  return std::sqrt(s * f.grid.dxi());
}

SpectralField& operator+=(SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "field sum");
  for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

SpectralField& operator-=(SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "field difference");
  for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
  return a;
}

SpectralField& operator*=(SpectralField& a, double s) {
  for (complex& c : a.coeffs) c *= s;
  return a;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

}  // namespace kdvlab
