#pragma once

#include <vector>

#include "kdvlab/gevrey.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/solver.hpp"

namespace kdvlab {

// Model constants behind the stepwise continuation argument. With datum size
// M0 = ||u0||_{G^{0,0}}, one local step of length
//   delta = c0 / (1 + 2 M0)^a
// grows the squared norm by at most
//   I = C sigma^rho 2^{3/2} M0^3,
// and the strip width sigma is admissible on [0, T] when
//   sigma <= sigma0  and  (2T/delta) C sigma^rho 2^{3/2} M0 <= 1.
struct ContinuationParams {
  double c0 = 0.5;
  double a = 2.0;
  double C = 1.0;
  double rho = 0.74;
  double sigma0 = 1.0;
};

inline constexpr double kTwoPowThreeHalves = 2.8284271247461902909;  // 2^{3/2}
inline constexpr long long kInductionBudget = 1'000'000'000;

double local_timestep(const ContinuationParams& p, double m0);

double induction_increment(const ContinuationParams& p, double m0, double sigma);

// Left side of the smallness condition; the admissibility test allows
// 1 + 1e-13 to absorb pow round-trip error at the solved sigma, where the
// condition is an exact equality in real arithmetic.
double smallness_lhs(const ContinuationParams& p, double m0, double sigma,
                     double t_end);

bool smallness_ok(const ContinuationParams& p, double m0, double sigma,
                  double t_end);

struct SigmaSolution {
  double sigma = 0.0;  // min(sigma0, c T^{-1/rho})
  double c = 0.0;      // +inf for a zero datum (any strip is admissible)
};

// Largest strip width satisfying the smallness condition at horizon T.
// Doubling T scales the uncapped solution by 2^{-1/rho}.
SigmaSolution solve_sigma(const ContinuationParams& p, double t_end, double m0);

// M^2_k = M0^2 + k I for k = 0..n_steps, n_steps the least integer covering
// T with steps of delta. The sequence must stay below 2 M0^2; the first
// index past the bound is recorded instead of throwing so a failed run can
// be reported. More than kInductionBudget lattice points is an error.
struct InductionResult {
  double delta = 0.0;
  long long n_steps = 0;
  double increment = 0.0;
  double m2_initial = 0.0;
  double m2_final = 0.0;
  double bound = 0.0;            // 2 M0^2
  bool ok = false;               // whole sequence within bound * (1 + 1e-12)
  long long first_violation = -1;
  std::vector<double> m2_prefix;  // first min(n_steps + 1, 4096) values

  double m2_at(long long k) const { return m2_initial + double(k) * increment; }
};

InductionResult simulate_induction(const ContinuationParams& p, double m0,
                                   double sigma, double t_end);

struct CalibrateOptions {
  std::vector<double> scales = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> delta_trials = {0.64, 0.32, 0.16, 0.08,
                                      0.04, 0.02, 0.01, 0.005};
  std::vector<double> sigma_probe = {0.4, 0.2, 0.1, 0.05};
  double factor_cut = 0.5;  // Picard contraction certifying a trial delta
  double margin = 0.8;      // safety factor applied to the fitted c0
};

struct CalibrationScaleReport {
  double scale = 0.0;
  double m0 = 0.0;
  double delta_star = 0.0;  // largest certified trial delta
  double c_bound = 0.0;     // max G / (sigma^rho 2^{3/2} M0^3) over probes
};

struct CalibrationResult {
  ContinuationParams params;
  std::vector<CalibrationScaleReport> scales;
  double fit_intercept = 0.0;  // log c0 before margin and cap
};

// Fits (c0, a) from certified local step sizes across rescaled copies of the
// datum and C from measured norm growth, keeping rho and sigma0 from p0. The
// margin is applied to the fit output, not compounded, so re-calibrating on
// the same datum reproduces the same params. A zero datum returns p0
// unchanged; a datum no trial delta can certify raises CalibrationError.
CalibrationResult calibrate(const RealField& u0, const ContinuationParams& p0,
                            const SolverConfig& base,
                            const CalibrateOptions& opt = {});

struct GlobalRunResult {
  double m0 = 0.0;
  double sigma_used = 0.0;         // solve_sigma at the full horizon
  double bound = 0.0;              // 2 M0^2
  bool within_bound = false;       // sup_t M_sigma^2(t) <= bound * 1.05
  std::vector<double> times;
  std::vector<double> m_sigma_sq;
  std::vector<double> sigma_floor;  // admissible width at each recorded time
  std::vector<RadiusEstimate> radius;
  InductionResult induction;
  Trajectory trajectory;
};

GlobalRunResult run_global(const RealField& u0, double t_end,
                           const ContinuationParams& p, const SolverConfig& base,
                           const RadiusFitOptions& fit = {});

// Schedule for data one rung up the smoothness ladder: a datum measured in
// G^{sigma0, s} with norm m0 embeds into G^{sigma0/2, 0} with the grid's
// inclusion constant, and the base schedule launched from the half strip is
// halved again. sigma_at(T) = min(sigma0/4, kappa T^{-1/rho}); at s = 0 this
// is exactly half the base solution at strip sigma0/2.
struct GeneralSchedule {
  double sigma_cap = 0.0;  // sigma0 / 4
  double kappa = 0.0;      // c' / 2, +inf for a zero datum
  double rho = 0.0;
  double embedded_m0 = 0.0;

  double sigma_at(double t_end) const;
};

GeneralSchedule general_s_schedule(const GridSpec& grid, double sigma0, double s,
                                   double m0, const ContinuationParams& p);

}  // namespace kdvlab
