#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "kdvlab/almost_conservation.hpp"
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

}  // namespace

TEST_CASE("symbol gap inequality holds over random draws") {
  Rng rng(31);
  for (int i = 0; i < 100000; ++i) {
    const double sigma = rng.uniform(0.0, 5.0);
    const double theta = rng.uniform(0.0, 1.0);
    const double alpha = rng.uniform(-50.0, 50.0);
    const double beta = rng.uniform(-50.0, 50.0);
    const SymbolGap g = symbol_gap(sigma, theta, alpha, beta);
    // both sides live on the scale of the exponential product; rounding the
    // exponents costs ~1e-13 of that scale, so slack is measured against it
    const double prod = std::exp(sigma * std::abs(alpha)) *
                        std::exp(sigma * std::abs(beta));
    if (!(g.lhs >= -1e-12 * prod) ||
        !(g.lhs <= g.rhs * (1.0 + 1e-12) + 1e-12 * prod)) {
      CAPTURE(sigma);
      CAPTURE(theta);
      CAPTURE(alpha);
      CAPTURE(beta);
      REQUIRE(false);
    }
  }
}

TEST_CASE("symbol gap vanishes for same-sign frequencies") {
  Rng rng(32);
  for (int i = 0; i < 1000; ++i) {
    const double sigma = rng.uniform(0.0, 4.0);
    const double a = rng.uniform(0.0, 60.0);
    const double b = rng.uniform(0.0, 60.0);
    const SymbolGap g = symbol_gap(sigma, 0.5, a, b);
    const double scale = std::exp(sigma * a) * std::exp(sigma * b);
    CHECK(std::abs(g.lhs) <= 1e-12 * scale);
    const SymbolGap gn = symbol_gap(sigma, 0.5, -a, -b);
    CHECK(std::abs(gn.lhs) <= 1e-12 * scale);
  }
}

TEST_CASE("symbol gap input guards") {
  CHECK_THROWS_AS(symbol_gap(-0.1, 0.5, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(symbol_gap(0.5, 1.5, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(symbol_gap(10.0, 0.5, 40.0, 1.0), GuardError);
  // theta = 0 collapses the right side onto the product itself
  const SymbolGap g = symbol_gap(0.7, 0.0, 3.0, -5.0);
  CHECK(g.rhs == doctest::Approx(std::exp(0.7 * 3.0) * std::exp(0.7 * 5.0))
                     .epsilon(1e-14));
}

TEST_CASE("commutator source is identically zero without smoothing") {
  Rng rng(33);
  RealField u = make_random_band(kGrid, 2.0, 0.3, rng);
  SpectralField F = commutator_source(forward(u), 0.0);
  for (const complex& c : F.coeffs) {
    CHECK(c.real() == 0.0);
    CHECK(c.imag() == 0.0);
  }
}

TEST_CASE("commutator source of one cosine is zero for every strip width") {
  // Exact two-mode spectrum: both modes share the weight e^{sigma kappa}, so
  // the weighted and unweighted squares cancel identically. What survives is
  // the transforms' floor noise amplified by the weight over the retained
  // band, e^{sigma * 17.05} on this grid.
  SpectralField f = make_spectral_field(kGrid);
  const double mode = oracle::cosine_mode(kGrid.length);
  f.coeffs[kGrid.index_of_k(10)] = mode;
  f.coeffs[kGrid.index_of_k(-10)] = mode;
  for (double sigma : {0.1, 0.5, 1.0}) {
    SpectralField F = commutator_source(f, sigma);
    double sup = 0.0;
    for (const complex& c : F.coeffs) sup = std::max(sup, std::abs(c));
    CAPTURE(sigma);
    CHECK(sup < 1e-13 * std::exp(sigma * kGrid.dealias_k_max() * kGrid.dxi()));
  }
}

TEST_CASE("commutator source of a two-mode field matches the closed form") {
  const double k1 = 0.5, k2 = 0.3, sigma = 0.4;
  RealField u = make_real_field(kGrid);
  for (int j = 0; j < kGrid.n_points; ++j)
    u.samples[j] = std::cos(k1 * kGrid.x(j)) + std::cos(k2 * kGrid.x(j));

  RealField F = inverse(commutator_source(forward(u), sigma));

  // smoothing each mode by e^{sigma kappa} leaves the sum frequency alone and
  // mismatches only the difference frequency:
  // F = -1/2 (k1 - k2) (e^{sigma(k1+k2)} - e^{sigma(k1-k2)}) sin((k1-k2) x)
  const double amp =
      -0.5 * (k1 - k2) * (std::exp(sigma * (k1 + k2)) - std::exp(sigma * (k1 - k2)));
  double err = 0.0;
  for (int j = 0; j < kGrid.n_points; ++j)
    err = std::max(err,
                   std::abs(F.samples[j] - amp * std::sin((k1 - k2) * kGrid.x(j))));
  CHECK(err < 1e-10);
}

TEST_CASE("weighted convolution of two point modes has the closed form") {
  SpectralField a = make_spectral_field(kGrid);
  SpectralField b = make_spectral_field(kGrid);
  const complex va(2.0, 1.0), vb(1.0, -3.0);
  a.coeffs[kGrid.index_of_k(5)] = va;
  b.coeffs[kGrid.index_of_k(7)] = vb;

  for (double rho : {0.0, 0.5, 1.0}) {
    SpectralField c = brho_spatial(a, b, rho);
    const double w = std::pow(std::min(std::abs(kGrid.xi_of_k(5)),
                                       std::abs(kGrid.xi_of_k(7))),
                              rho);
    const complex want =
        kGrid.dxi() / oracle::kSqrt2Pi * w * va * vb;
    CAPTURE(rho);
    CHECK(std::abs(c.at_k(12) - want) < 1e-15);
    double off = 0.0;
    for (int i = 0; i < kGrid.n_points; ++i) {
      if (kGrid.k_of_index(i) == 12) continue;
      off = std::max(off, std::abs(c.coeffs[i]));
    }
    CHECK(off == 0.0);
  }
}

TEST_CASE("weighted convolution is bilinear and guards its inputs") {
  Rng rng(34);
  SpectralField a = forward(make_random_band(kGrid, 1.0, 0.5, rng));
  SpectralField b = forward(make_random_band(kGrid, 1.0, 0.5, rng));
  SpectralField c1 = brho_spatial(a, b, 0.5);
  SpectralField a3 = a;
  a3 *= 3.0;
  SpectralField c3 = brho_spatial(a3, b, 0.5);
  double err = 0.0;
  for (int i = 0; i < kGrid.n_points; ++i)
    err = std::max(err, std::abs(c3.coeffs[i] - 3.0 * c1.coeffs[i]));
  CHECK(err < 1e-12 * l2_norm(c1));

  CHECK_THROWS_AS(brho_spatial(a, b, 1.5), InputError);
  const GridSpec other = GridSpec::make(512, 40.0 * oracle::kPi);
  CHECK_THROWS_AS(brho_spatial(a, make_spectral_field(other), 0.5), GuardError);
}

TEST_CASE("commutator magnitude never beats its convolution majorant") {
  Rng rng(35);
  for (int field = 0; field < 5; ++field) {
    RealField u = make_random_band(kGrid, rng.uniform(0.5, 4.0),
                                   rng.uniform(0.2, 0.8), rng);
    SpectralField f = forward(u);
    for (double rho : {0.25, 0.5, 0.74}) {
      for (double sigma : {0.05, 0.2}) {
        SpectralField F = commutator_source(f, sigma);
        SpectralField M = commutator_majorant(f, sigma, rho);
        // At the band edge every contributing pair has one sign, the weight
        // bracket cancels exactly, and both sides sit at the transforms'
        // floor. The floor scales with the squared weighted l1 mass, the
        // magnitude that actually passes through the FFTs.
        double l1 = 0.0;
        for (int i = 0; i < kGrid.n_points; ++i)
          l1 += std::abs(f.coeffs[i]) *
                std::exp(sigma * std::abs(kGrid.xi_of_index(i)));
        l1 *= kGrid.dxi();
        const double floor = 1e-13 * l1 * l1;
        int violations = 0;
        for (int i = 0; i < kGrid.n_points; ++i) {
          if (std::abs(F.coeffs[i]) >
              M.coeffs[i].real() * (1.0 + 1e-12) + floor)
            ++violations;
        }
        CAPTURE(field);
        CAPTURE(rho);
        CAPTURE(sigma);
        CHECK(violations == 0);
      }
    }
  }
}

TEST_CASE("norm growth of energetic data fits a positive power law") {
  Rng rng(36);
  RealField u = make_random_band(kGrid, 8.0, 0.5, rng);
  const std::vector<double> ladder{0.6, 0.5, 0.4, 0.3, 0.2};
  SolverConfig cfg;
  GrowthSeries gs = track_growth(u, 0.1, ladder, cfg);
  CHECK(gs.n_used >= 3);
  for (double g : gs.growth) CHECK(g >= 0.0);
  CHECK(gs.slope >= 0.74);
  CHECK(gs.slope < 15.0);
  CHECK(gs.m0 == doctest::Approx(l2_norm(forward(u))).epsilon(1e-12));
}

TEST_CASE("vanishing strip width recovers plain momentum conservation") {
  Rng rng(36);
  RealField u = make_random_band(kGrid, 8.0, 0.5, rng);
  const std::vector<double> ladder{0.6, 0.5, 0.4, 0.3, 0.2, 1e-9};
  SolverConfig cfg;
  GrowthSeries gs = track_growth(u, 0.1, ladder, cfg);
  // At width ~0 the weighted norm is the momentum, so the residual growth is
  // the integrator's momentum drift; a few 1e-8 relative for this datum.
  const double mom = momentum(forward(u));
  CHECK(std::abs(gs.growth.back()) <= 1e-7 * std::max(1.0, mom));
}

TEST_CASE("a traveling wave shows no measurable growth at any width") {
  const std::vector<double> ladder{0.4, 0.2, 0.1, 0.05};
  SolverConfig cfg;
  try {
    track_growth(make_soliton(kGrid, 0.5), 0.1, ladder, cfg);
    FAIL("expected the fit-undefined guard: |u_hat| of a traveling wave is "
         "constant in time");
  } catch (const GuardError& e) {
    CHECK(std::string(e.what()).find("noise") != std::string::npos);
  }
}

TEST_CASE("zero datum leaves the growth fit undefined") {
  const std::vector<double> ladder{0.4, 0.2};
  SolverConfig cfg;
  cfg.t_end = 0.1;
  CHECK_THROWS_AS(track_growth(make_zero(kGrid), 0.1, ladder, cfg), GuardError);
}

TEST_CASE("growth tracking validates its sigma grid") {
  SolverConfig cfg;
  RealField u = make_soliton(kGrid, 0.5);
  CHECK_THROWS_AS(track_growth(u, 0.1, std::vector<double>{0.1, 0.2}, cfg),
                  InputError);
  CHECK_THROWS_AS(track_growth(u, 0.1, std::vector<double>{0.2, 0.0}, cfg),
                  InputError);
  CHECK_THROWS_AS(track_growth(u, 0.1, std::vector<double>{}, cfg), InputError);
}
