#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "kdvlab/config.hpp"

namespace kdvlab {

// Exit codes. Checks are scientific expectations about results: a run that
// completes but lands outside them exits 5 rather than pretending success.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitInstability = 3;
inline constexpr int kExitCalibration = 4;
inline constexpr int kExitCheckFailed = 5;
inline constexpr int kExitInternal = 10;

struct ToleranceProfile {
  std::string name;
  double momentum_drift = 0.0;
  double hamiltonian_drift = 0.0;
  double bound_slack = 0.0;         // factor over 2 M0^2 the norm may reach
  double ratio_tol_growing = 0.0;   // slab quadrature, 2^rho variants
  double ratio_tol_decaying = 0.0;  // slab quadrature, 2^{-2 rho} variant
};

// "default" or "strict".
ToleranceProfile tolerance_profile(std::string_view name);

struct CommandContext {
  Config config;
  std::filesystem::path out_dir;
  std::uint64_t seed = 12345;
  ToleranceProfile tolerances = tolerance_profile("default");
};

// Runs one subcommand, maps thrown errors to exit codes, and writes
// manifest.json (command, seed, profile, effective config, outputs, status)
// into out_dir whenever that directory can be created. CSV outputs are
// deterministic for a fixed config and seed; the manifest's wall_ms is the
// one field allowed to differ between reruns.
int run_command(const std::string& name, const CommandContext& ctx);

}  // namespace kdvlab
