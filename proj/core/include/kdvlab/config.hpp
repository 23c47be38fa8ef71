#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kdvlab/bilinear.hpp"
#include "kdvlab/continuation.hpp"
#include "kdvlab/gevrey.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/rng.hpp"
#include "kdvlab/solver.hpp"

namespace kdvlab {

enum class Preset {
  soliton,
  two_soliton,
  gaussian,
  lorentzian,
  sech2,
  random_band,
  zero,
};

std::string_view to_string(Preset p);
Preset preset_from_string(std::string_view name);

struct InitialSpec {
  Preset preset = Preset::soliton;
  double kappa = 0.5;
  double x0 = 0.0;
  double kappa2 = 0.3;   // two_soliton second speed parameter
  double x2 = 20.0;      // two_soliton second center
  double amplitude = 1.0;
  double center = 0.0;
  double decay = 0.5;    // random_band spectral envelope
};

struct GrowthBlock {
  double delta = 0.1;
  std::vector<double> sigmas = {0.4, 0.2, 0.1, 0.05};
};

struct PicardBlock {
  double delta = 0.01;
  PicardOptions options;
};

struct CounterexampleBlock {
  double rho = 0.5;
  std::vector<double> n_ladder = {8.0, 16.0, 32.0, 64.0};
  std::vector<CounterexampleVariant> variants = {
      CounterexampleVariant::xi_power, CounterexampleVariant::min_symbol,
      CounterexampleVariant::high_factor_power};
  int res_xi = 64;
  int res_xi1 = 16;
  int res_mu = 16;
  int res_mu1 = 16;
};

struct KpvBlock {
  int n_xi = 32;
  int n_tau = 32;
  double dxi = 0.5;
  double dtau = 0.5;
  double sigma = 0.5;
  double s = 0.0;
  double b = 0.75;
  std::vector<double> bprime_grid = {0.75};
  int draws = 3;
};

struct ContinuationBlock {
  ContinuationParams params;
  double t_end = 4.0;
  std::vector<double> t_ladder = {1.0, 2.0, 4.0, 8.0, 16.0};
  bool calibrate = false;
};

struct Config {
  int grid_n = 1024;
  double grid_length = 125.66370614359172;  // 40 pi
  InitialSpec initial;
  SolverConfig solver{1e-3, 1.0, true, 100};
  GevreyParams gevrey{0.5, 0.0};
  RadiusFitOptions fit;
  PicardBlock picard;
  GrowthBlock growth;
  CounterexampleBlock counterexample;
  KpvBlock kpv;
  ContinuationBlock continuation;

  GridSpec grid() const;
};

// Parses and validates a JSON config. Absent blocks and keys keep their
// defaults; unknown keys anywhere are a ConfigError, as are type or range
// violations.
Config parse_config_text(const std::string& text);
Config load_config_file(const std::filesystem::path& path);

// The fully resolved configuration, defaults filled in, serialized as JSON.
std::string effective_config_json(const Config& cfg);

RealField make_initial(const Config& cfg, Rng& rng);

}  // namespace kdvlab
