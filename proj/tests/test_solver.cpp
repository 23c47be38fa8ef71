#include "doctest.h"

#include <cmath>
#include <vector>

#include "kdvlab/errors.hpp"
#include "kdvlab/gevrey.hpp"
#include "kdvlab/presets.hpp"
#include "kdvlab/rng.hpp"
#include "kdvlab/solver.hpp"
#include "kdvlab/spectral.hpp"
#include "oracles.hpp"

using namespace kdvlab;

namespace {

const GridSpec kGrid = GridSpec::make(1024, 40.0 * oracle::kPi);

double l2_gap(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d -= b;
  return l2_norm(d);
}

SpectralField exact_soliton_state(double kappa, double t) {
  RealField u = make_real_field(kGrid);
  for (int j = 0; j < kGrid.n_points; ++j)
    u.samples[j] = soliton_value(kGrid.x(j), t, kappa, 0.0, kGrid.length);
  return forward(u);
}

}  // namespace

TEST_CASE("free flow moves a cosine at its phase speed") {
  const double kappa = 0.5;
  RealField u = make_real_field(kGrid);
  for (int j = 0; j < kGrid.n_points; ++j)
    u.samples[j] = std::cos(kappa * kGrid.x(j));
  const double t = 0.7;
  RealField moved = inverse(free_evolve(forward(u), t));
  // u_t + u_xxx = 0 propagates cos(kappa x) to cos(kappa x + kappa^3 t)
  double err = 0.0;
  for (int j = 0; j < kGrid.n_points; ++j)
    err = std::max(err, std::abs(moved.samples[j] -
                                 std::cos(kappa * kGrid.x(j) + kappa * kappa * kappa * t)));
  CHECK(err < 1e-12);
}

TEST_CASE("free flow group law and norm preservation") {
  Rng rng(21);
  RealField u = make_real_field(kGrid);
  for (double& v : u.samples) v = rng.normal();
  SpectralField f = forward(u);

  SpectralField ab = free_evolve(free_evolve(f, 0.3), 1.1);
  SpectralField once = free_evolve(f, 1.4);
  // phase arguments reach xi_max^3 * t ~ 2e4, so each mode carries a few
  // ulps of t * xi^3 in angle; 1e-10 leaves that rounding room.
  CHECK(l2_gap(ab, once) < 1e-10 * l2_norm(f));

  SpectralField ident = free_evolve(f, 0.0);
  CHECK(l2_gap(ident, f) == 0.0);

  for (int draw = 0; draw < 5; ++draw) {
    const double t = rng.uniform(-20.0, 20.0);
    const double sigma = rng.uniform(0.0, 2.0);
    const double s = rng.uniform(0.0, 3.0);
    const GevreyParams p{sigma, s};
    const double before = gevrey_norm(f, p);
    const double after = gevrey_norm(free_evolve(f, t), p);
    CHECK(std::abs(after - before) <= 1e-13 * before);
  }
}

TEST_CASE("nonlinear term of a cosine is the closed form") {
  const double kappa = 0.5;
  RealField u = make_real_field(kGrid);
  for (int j = 0; j < kGrid.n_points; ++j)
    u.samples[j] = std::cos(kappa * kGrid.x(j));
  RealField rhs = inverse(nonlinear_rhs(forward(u)));
  // -1/2 d/dx cos^2(kappa x) = (kappa/2) sin(2 kappa x)
  double err = 0.0;
  for (int j = 0; j < kGrid.n_points; ++j)
    err = std::max(err, std::abs(rhs.samples[j] -
                                 0.5 * kappa * std::sin(2.0 * kappa * kGrid.x(j))));
  CHECK(err < 1e-11);
}

TEST_CASE("small data follow the free flow") {
  RealField u = make_gaussian(kGrid, 1e-8, 0.0);
  SolverConfig cfg;
  cfg.t_end = 0.1;
  Trajectory traj = evolve(u, cfg);
  SpectralField lin = free_evolve(dealias(forward(u)), 0.1);
  CHECK(l2_gap(traj.states.back(), lin) < 1e-7 * l2_norm(lin));
}

TEST_CASE("one step tracks the traveling wave") {
  const double kappa = 0.5;
  SpectralField f = dealias(forward(make_soliton(kGrid, kappa)));
  SpectralField next = step(f, 1e-3);
  CHECK(l2_gap(next, exact_soliton_state(kappa, 1e-3)) < 1e-8);
  CHECK_THROWS_AS(step(f, 0.0), InputError);
}

TEST_CASE("stepper converges at fourth order") {
  const double kappa = 0.5;
  RealField u0 = make_soliton(kGrid, kappa);
  const SpectralField exact = exact_soliton_state(kappa, 1.0);
  auto error_at = [&](double dt) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 1.0;
    cfg.record_every = 1000000;
    return l2_gap(evolve(u0, cfg).states.back(), exact);
  };
  // dt = 0.02 is still pre-asymptotic for this datum (a fifth-order term
  // dominates and the measured slope sits near 4.9), so the clean fourth
  // order is read off the halving below it.
  const double e1 = error_at(0.01);
  const double e2 = error_at(0.005);
  const double order = std::log2(e1 / e2);
  CAPTURE(e1);
  CAPTURE(e2);
  CHECK(order > 3.8);
  CHECK(order < 4.25);
}

TEST_CASE("soliton trajectory stays on the closed form and conserves") {
  const double kappa = 0.5;
  SolverConfig cfg;
  cfg.t_end = 1.0;
  Trajectory traj = evolve(make_soliton(kGrid, kappa), cfg);

  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(traj.times.size() == 11);  // record_every=100 at dt=1e-3

  const SpectralField& f0 = traj.states.front();
  CHECK(mass(f0) == doctest::Approx(oracle::soliton_mass(kappa)).epsilon(1e-10));
  CHECK(momentum(f0) ==
        doctest::Approx(oracle::soliton_momentum(kappa)).epsilon(1e-10));
  CHECK(hamiltonian(f0) ==
        doctest::Approx(oracle::soliton_hamiltonian(kappa)).epsilon(1e-10));

  CHECK(traj.conservation.mass_drift < 1e-12);
  CHECK(traj.conservation.momentum_drift < 1e-12);
  CHECK(traj.conservation.hamiltonian_drift < 1e-11);

  const double rel =
      l2_gap(traj.states.back(), exact_soliton_state(kappa, 1.0)) /
      l2_norm(traj.states.back());
  CHECK(rel < 1e-7);
}

TEST_CASE("two solitons superpose the conserved quantities when far apart") {
  RealField u = make_two_soliton(kGrid, 0.5, -30.0, 0.3, 30.0);
  SpectralField f = forward(u);
  CHECK(mass(f) == doctest::Approx(oracle::soliton_mass(0.5) +
                                   oracle::soliton_mass(0.3)).epsilon(1e-6));
  CHECK(momentum(f) == doctest::Approx(oracle::soliton_momentum(0.5) +
                                       oracle::soliton_momentum(0.3)).epsilon(1e-6));
}

TEST_CASE("unresolved data are refused") {
  const GridSpec coarse = GridSpec::make(64, 40.0 * oracle::kPi);
  SolverConfig cfg;
  cfg.t_end = 0.1;
  CHECK_THROWS_AS(evolve(make_gaussian(coarse, 1.0, 0.0), cfg), GuardError);
}

TEST_CASE("a reckless step size is reported as instability") {
  SolverConfig cfg;
  cfg.dt = 1.0;
  cfg.t_end = 10.0;
  CHECK_THROWS_AS(evolve(make_soliton(kGrid, 0.5), cfg), InstabilityError);
}

TEST_CASE("solver config is validated") {
  SolverConfig cfg;
  cfg.dt = -1.0;
  CHECK_THROWS_AS(evolve(make_soliton(kGrid, 0.5), cfg), InputError);
  cfg = SolverConfig{};
  cfg.record_every = 0;
  CHECK_THROWS_AS(evolve(make_soliton(kGrid, 0.5), cfg), InputError);
  cfg = SolverConfig{};
  cfg.t_end = 0.0;
  CHECK_THROWS_AS(evolve(make_soliton(kGrid, 0.5), cfg), InputError);
}

TEST_CASE("nearby trajectories separate no faster than the gradient bound") {
  RealField a = make_soliton(kGrid, 0.5);
  RealField b = make_soliton(kGrid, 0.5, 0.1);
  SolverConfig cfg;
  cfg.dt = 5e-3;
  cfg.t_end = 0.5;
  const double ratio = uniqueness_gap_ratio(a, b, cfg);
  CHECK(ratio > 0.0);
  CHECK(ratio <= 1.1);
  CHECK_THROWS_AS(uniqueness_gap_ratio(a, a, cfg), GuardError);
}
