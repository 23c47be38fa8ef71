#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "kdvlab/almost_conservation.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/gevrey.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/presets.hpp"
#include "kdvlab/rng.hpp"
#include "kdvlab/solver.hpp"
#include "kdvlab/spectral.hpp"

using namespace kdvlab;

int main() {
  const GridSpec grid = GridSpec::make(1024, 40.0 * std::numbers::pi);

  // 1. single cosine commutator: physical vs spectral construction
  for (double sigma : {0.1, 0.5, 1.0}) {
    RealField u = make_real_field(grid);
    for (int j = 0; j < grid.n_points; ++j) u.samples[j] = std::cos(0.5 * grid.x(j));
    const SpectralField phys = forward(u);
    SpectralField spec = make_spectral_field(grid);
    const double mode = 0.5 * grid.length / std::sqrt(2.0 * std::numbers::pi);
    spec.coeffs[grid.index_of_k(10)] = mode;   // k=10 <-> xi=0.5
    spec.coeffs[grid.index_of_k(-10)] = mode;
    const SpectralField* both[] = {&phys, &spec};
    for (const SpectralField* f : both) {
      try {
        const SpectralField F = commutator_source(*f, sigma);
        double sup = 0.0;
        for (const complex& c : F.coeffs) sup = std::max(sup, std::abs(c));
        std::printf("cosine sigma %.1f %s: sup %.3e\n", sigma,
                    f == &phys ? "physical" : "spectral", sup);
      } catch (const Error& e) {
        std::printf("cosine sigma %.1f %s: THREW %s\n", sigma,
                    f == &phys ? "physical" : "spectral", e.what());
      }
    }
  }

  // 2. Richardson order with smaller steps
  {
    const RealField u0 = make_soliton(grid, 0.5, 0.0);
    auto err_at = [&](double dt) {
      SolverConfig cfg;
      cfg.dt = dt;
      cfg.t_end = 1.0;
      cfg.record_every = 1 << 30;
      const Trajectory traj = evolve(u0, cfg);
      const RealField got = inverse(traj.states.back());
      const RealField want = make_soliton(grid, 0.5, 1.0);
      double num = 0, den = 0;
      for (int i = 0; i < grid.n_points; ++i) {
        const double d = got.samples[i] - want.samples[i];
        num += d * d;
        den += want.samples[i] * want.samples[i];
      }
      return std::sqrt(num / den);
    };
    const double e1 = err_at(0.02), e2 = err_at(0.01), e3 = err_at(0.005),
                 e4 = err_at(0.0025);
    std::printf("richardson: e(.02)=%.3e e(.01)=%.3e e(.005)=%.3e e(.0025)=%.3e\n",
                e1, e2, e3, e4);
    std::printf("  orders: %.3f %.3f %.3f\n", std::log2(e1 / e2),
                std::log2(e2 / e3), std::log2(e3 / e4));
  }

  // 3. blow-up class with dt in the supported envelope
  {
    Rng rng(7);
    const RealField violent = make_random_band(grid, 60.0, 0.8, rng);
    SolverConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 5.0;
    try {
      evolve(violent, cfg);
      std::printf("blowup: no throw?!\n");
    } catch (const InstabilityError& e) {
      std::printf("blowup: InstabilityError: %s\n", e.what());
    } catch (const Error& e) {
      std::printf("blowup: OTHER error: %s\n", e.what());
    }
  }

  // 4. picard vs evolve after the sign fix, soliton delta 0.01
  {
    const RealField u0 = make_soliton(grid, 0.5, 0.0);
    const PicardResult pr = picard_iterate(u0, 0.01, GevreyParams{0.0, 0.0});
    SolverConfig cfg;
    cfg.dt = 1e-4;
    cfg.t_end = 0.01;
    cfg.record_every = 1 << 30;
    const Trajectory traj = evolve(u0, cfg);
    for (double sigma : {0.0, 0.5}) {
      const double gap = gevrey_norm(pr.limit.back() - traj.states.back(),
                                     GevreyParams{sigma, 0.0});
      std::printf("picard gap sigma %.1f: %.3e (converged %d, iters %zu)\n",
                  sigma, gap, pr.converged, pr.increments.size());
    }
  }

  // 5. growth at vanishing width vs integrator drift, amp 8 band
  {
    Rng rng(31337);
    const RealField u0 = make_random_band(grid, 8.0, 0.5, rng);
    SolverConfig cfg;
    const std::vector<double> ladder = {0.6, 0.5, 0.4, 0.3, 0.2, 1e-9};
    const GrowthSeries gs = track_growth(u0, 0.1, ladder, cfg);
    const double mom = momentum(forward(u0));
    std::printf("vanishing-width growth %.3e, momentum %.3e, rel %.3e\n",
                gs.growth.back(), mom, std::abs(gs.growth.back()) / mom);
  }

  return 0;
}
