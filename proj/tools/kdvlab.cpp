#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "kdvlab/commands.hpp"
#include "kdvlab/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spectral laboratory for dispersive evolution on the circle"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string profile = "default";
  std::uint64_t seed = 12345;
  app.add_option("--config", config_path, "JSON config file (defaults apply)");
  app.add_option("--out", out_dir, "output directory for CSVs and manifest");
  app.add_option("--seed", seed, "seed for randomized inputs");
  app.add_option("--tolerance-profile", profile, "check thresholds")
      ->check(CLI::IsMember({"default", "strict"}));

  app.add_subcommand("simulate", "integrate the equation, log conserved "
                                 "quantities and the analyticity radius");
  app.add_subcommand("radius", "fit the spectral decay rate of a datum or "
                               "trajectory");
  app.add_subcommand("picard", "run the fixed-point iteration on one local "
                               "step and report contraction");
  app.add_subcommand("growth", "measure exponential-weight norm growth "
                               "against the strip width");
  app.add_subcommand("counterexample", "evaluate the high-low slab quadrature "
                                       "across a frequency ladder");
  app.add_subcommand("kpv-scan", "sample space-time norm ratios of the "
                                 "derivative bilinear form");
  app.add_subcommand("continuation", "solve the strip-width schedule and "
                                     "verify the norm-doubling bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kdvlab::kExitConfig;
  }

  kdvlab::CommandContext ctx;
  ctx.out_dir = out_dir;
  ctx.seed = seed;
  try {
    ctx.tolerances = kdvlab::tolerance_profile(profile);
    if (!config_path.empty()) ctx.config = kdvlab::load_config_file(config_path);
  } catch (const kdvlab::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kdvlab::kExitConfig;
  }

  return kdvlab::run_command(app.get_subcommands().front()->get_name(), ctx);
}
