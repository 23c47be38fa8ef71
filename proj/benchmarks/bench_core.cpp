#include <benchmark/benchmark.h>

#include <numbers>

#include "kdvlab/almost_conservation.hpp"
#include "kdvlab/bilinear.hpp"
#include "kdvlab/gevrey.hpp"
#include "kdvlab/presets.hpp"
#include "kdvlab/solver.hpp"
#include "kdvlab/spectral.hpp"

namespace {

using namespace kdvlab;

GridSpec grid_of(int n) { return GridSpec::make(n, 40.0 * std::numbers::pi); }

void bm_fft_roundtrip(benchmark::State& state) {
  const GridSpec grid = grid_of(int(state.range(0)));
  const RealField u = make_soliton(grid, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse(forward(u)).samples.data());
  }
}
BENCHMARK(bm_fft_roundtrip)->Arg(256)->Arg(1024)->Arg(4096);

void bm_gevrey_norm(benchmark::State& state) {
  const SpectralField f = forward(make_soliton(grid_of(1024), 0.5));
  const GevreyParams p{0.5, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gevrey_norm(f, p));
  }
}
BENCHMARK(bm_gevrey_norm);

void bm_solver_step(benchmark::State& state) {
  const SpectralField f = forward(make_soliton(grid_of(int(state.range(0))), 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(f, 1e-3).coeffs.data());
  }
}
BENCHMARK(bm_solver_step)->Arg(256)->Arg(1024)->Arg(4096);

void bm_radius_fit(benchmark::State& state) {
  const SpectralField f = forward(make_soliton(grid_of(1024), 0.5));
  RadiusFitOptions opt;
  opt.xi_lo = 6.0;
  opt.cap = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_radius(f, opt).sigma_hat);
  }
}
BENCHMARK(bm_radius_fit);

// Quadratic in the mode count; the dominant cost of the commutator check.
void bm_weighted_convolution(benchmark::State& state) {
  const GridSpec grid = grid_of(int(state.range(0)));
  const SpectralField f = forward(make_soliton(grid, 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brho_spatial(f, f, 0.5).coeffs.data());
  }
}
BENCHMARK(bm_weighted_convolution)->Arg(256)->Arg(512)->Arg(1024);

void bm_slab_quadrature(benchmark::State& state) {
  CounterexampleSpec spec;
  spec.big_n = double(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(counterexample_ratio(spec).ratio);
  }
}
BENCHMARK(bm_slab_quadrature)->Arg(8)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
