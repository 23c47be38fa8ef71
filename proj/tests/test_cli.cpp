#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "kdvlab_cli_tests";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& tag) {
  const fs::path out = kWork / (tag + ".out");
  const fs::path err = kWork / (tag + ".err");
  const std::string cmd = std::string(KDVLAB_BIN) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kWork);
  const fs::path p = kWork / name;
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << text;
  return p;
}

struct Setup {
  Setup() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
} setup_once;

}  // namespace

TEST_CASE("help and argument errors") {
  CHECK(run_cli("--help", "help").exit_code == 0);
  CHECK(run_cli("", "nosub").exit_code == 1);
  CHECK(run_cli("simulate --frobnicate", "badflag").exit_code == 1);
  CHECK(run_cli("simulate --tolerance-profile sloppy", "badprofile").exit_code == 1);
  CHECK(run_cli("frobnicate", "badsub").exit_code == 1);
}

TEST_CASE("config errors exit 1 and name the offender") {
  RunResult miss = run_cli("simulate --config /nonexistent.json --out " +
                               (kWork / "o_miss").string(),
                           "misscfg");
  CHECK(miss.exit_code == 1);

  const fs::path bad = write_config("bad_key.json", R"({"solver": {"dtt": 1.0}})");
  RunResult r = run_cli("simulate --config " + bad.string() + " --out " +
                            (kWork / "o_badkey").string(),
                        "badkey");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("dtt") != std::string::npos);

  const fs::path mal = write_config("malformed.json", "{\"grid\": ");
  CHECK(run_cli("simulate --config " + mal.string() + " --out " +
                    (kWork / "o_mal").string(),
                "malformed")
            .exit_code == 1);
}

TEST_CASE("simulate produces a trajectory, a manifest, and clean checks") {
  const fs::path cfg = write_config("sim_short.json",
                                    R"({"solver": {"t_end": 0.2}})");
  const fs::path out = kWork / "o_sim";
  RunResult r = run_cli("simulate --config " + cfg.string() + " --out " +
                            out.string(),
                        "sim");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "trajectory.csv"));
  CHECK(fs::exists(out / "manifest.json"));
  const std::string manifest = slurp(out / "manifest.json");
  CHECK(manifest.find("\"status\": \"ok\"") != std::string::npos);
  CHECK(manifest.find("\"exit_code\": 0") != std::string::npos);
  const std::string traj = slurp(out / "trajectory.csv");
  CHECK(traj.find("t,l2,mass,momentum,hamiltonian") == 0);
}

TEST_CASE("zero datum runs clean end to end") {
  const fs::path cfg = write_config(
      "sim_zero.json", R"({"initial": {"preset": "zero"}, "solver": {"t_end": 0.1}})");
  RunResult r = run_cli("simulate --config " + cfg.string() + " --out " +
                            (kWork / "o_zero").string(),
                        "zero");
  CHECK(r.exit_code == 0);
}

TEST_CASE("instability exits 3") {
  const fs::path cfg = write_config("sim_unstable.json",
                                    R"({"solver": {"dt": 1.0, "t_end": 10.0}})");
  RunResult r = run_cli("simulate --config " + cfg.string() + " --out " +
                            (kWork / "o_unst").string(),
                        "unstable");
  CHECK(r.exit_code == 3);
}

TEST_CASE("growth on a traveling wave reports the degenerate fit as a guard") {
  RunResult r = run_cli("growth --out " + (kWork / "o_growth").string(), "growth");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("noise") != std::string::npos);
  const std::string manifest = slurp(kWork / "o_growth" / "manifest.json");
  CHECK(manifest.find("\"status\": \"error\"") != std::string::npos);
}

TEST_CASE("growth on energetic data fits and exits clean") {
  const fs::path cfg = write_config("growth_rand.json", R"({
    "initial": {"preset": "random_band", "amplitude": 8.0},
    "growth": {"delta": 0.1, "sigmas": [0.6, 0.5, 0.4, 0.3, 0.2]}
  })");
  RunResult r = run_cli("growth --config " + cfg.string() + " --out " +
                            (kWork / "o_growth_ok").string(),
                        "growthok");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(kWork / "o_growth_ok" / "growth.csv"));
}

TEST_CASE("collapsed slab separation exits 2") {
  const fs::path cfg = write_config("ce_bad.json",
                                    R"({"counterexample": {"n_ladder": [4.0]}})");
  RunResult r = run_cli("counterexample --config " + cfg.string() + " --out " +
                            (kWork / "o_ce_bad").string(),
                        "cebad");
  CHECK(r.exit_code == 2);
}

TEST_CASE("remaining subcommands run clean on defaults") {
  CHECK(run_cli("radius --out " + (kWork / "o_radius").string(), "radius")
            .exit_code == 0);
  CHECK(run_cli("picard --out " + (kWork / "o_picard").string(), "picard")
            .exit_code == 0);
  CHECK(run_cli("counterexample --out " + (kWork / "o_ce").string(), "ce")
            .exit_code == 0);
  CHECK(run_cli("kpv-scan --out " + (kWork / "o_kpv").string(), "kpv")
            .exit_code == 0);
  CHECK(run_cli("continuation --out " + (kWork / "o_cont").string(), "cont")
            .exit_code == 0);
}

TEST_CASE("fixed seeds reproduce outputs byte for byte") {
  const fs::path cfg = write_config("det.json", R"({
    "initial": {"preset": "random_band", "amplitude": 2.0},
    "solver": {"t_end": 0.05}
  })");
  const fs::path o1 = kWork / "o_det1", o2 = kWork / "o_det2", o3 = kWork / "o_det3";
  CHECK(run_cli("simulate --config " + cfg.string() + " --seed 99 --out " +
                    o1.string(),
                "det1")
            .exit_code == 0);
  CHECK(run_cli("simulate --config " + cfg.string() + " --seed 99 --out " +
                    o2.string(),
                "det2")
            .exit_code == 0);
  CHECK(run_cli("simulate --config " + cfg.string() + " --seed 100 --out " +
                    o3.string(),
                "det3")
            .exit_code == 0);
  const std::string a = slurp(o1 / "trajectory.csv");
  const std::string b = slurp(o2 / "trajectory.csv");
  const std::string c = slurp(o3 / "trajectory.csv");
  REQUIRE(!a.empty());
  CHECK(a == b);
  CHECK(a != c);
}
