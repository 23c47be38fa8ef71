#include "kdvlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/presets.hpp"

namespace kdvlab {
namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& j, const char* where,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

const json* block(const json& root, const char* name) {
  if (!root.contains(name)) return nullptr;
  const json& b = root.at(name);
  if (!b.is_object())
    throw ConfigError(std::string(name) + " must be a JSON object");
  return &b;
}

template <class T>
void read(const json& j, const char* key, T& slot, const char* where) {
  if (!j.contains(key)) return;
  try {
    slot = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "' in " + where);
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::soliton: return "soliton";
    case Preset::two_soliton: return "two_soliton";
    case Preset::gaussian: return "gaussian";
    case Preset::lorentzian: return "lorentzian";
    case Preset::sech2: return "sech2";
    case Preset::random_band: return "random_band";
    case Preset::zero: return "zero";
  }
  throw InputError("unknown preset");
}

Preset preset_from_string(std::string_view name) {
  for (Preset p : {Preset::soliton, Preset::two_soliton, Preset::gaussian,
                   Preset::lorentzian, Preset::sech2, Preset::random_band,
                   Preset::zero})
    if (name == to_string(p)) return p;
  throw ConfigError("unknown preset '" + std::string(name) +
                    "', expected soliton | two_soliton | gaussian | "
                    "lorentzian | sech2 | random_band | zero");
}

GridSpec Config::grid() const { return GridSpec::make(grid_n, grid_length); }

Config parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require(root.is_object(), "config root must be a JSON object");
  check_keys(root, "config", {"grid", "initial", "solver", "gevrey", "fit",
                              "picard", "growth", "counterexample", "kpv",
                              "continuation"});

  Config cfg;

  if (const json* b = block(root, "grid")) {
    check_keys(*b, "grid", {"n", "length"});
    read(*b, "n", cfg.grid_n, "grid");
    read(*b, "length", cfg.grid_length, "grid");
    require(cfg.grid_n >= 8 && power_of_two(cfg.grid_n),
            "grid.n must be a power of two, at least 8");
    require(std::isfinite(cfg.grid_length) && cfg.grid_length > 0.0,
            "grid.length must be positive and finite");
  }

  if (const json* b = block(root, "initial")) {
    check_keys(*b, "initial", {"preset", "kappa", "x0", "kappa2", "x2",
                               "amplitude", "center", "decay"});
    std::string preset = std::string(to_string(cfg.initial.preset));
    read(*b, "preset", preset, "initial");
    cfg.initial.preset = preset_from_string(preset);
    read(*b, "kappa", cfg.initial.kappa, "initial");
    read(*b, "x0", cfg.initial.x0, "initial");
    read(*b, "kappa2", cfg.initial.kappa2, "initial");
    read(*b, "x2", cfg.initial.x2, "initial");
    read(*b, "amplitude", cfg.initial.amplitude, "initial");
    read(*b, "center", cfg.initial.center, "initial");
    read(*b, "decay", cfg.initial.decay, "initial");
    require(cfg.initial.kappa > 0.0 && cfg.initial.kappa2 > 0.0,
            "initial.kappa and initial.kappa2 must be > 0");
    require(cfg.initial.decay > 0.0, "initial.decay must be > 0");
  }

  if (const json* b = block(root, "solver")) {
    check_keys(*b, "solver", {"dt", "t_end", "dealias", "record_every"});
    read(*b, "dt", cfg.solver.dt, "solver");
    read(*b, "t_end", cfg.solver.t_end, "solver");
    read(*b, "dealias", cfg.solver.dealias_on, "solver");
    read(*b, "record_every", cfg.solver.record_every, "solver");
    require(std::isfinite(cfg.solver.dt) && cfg.solver.dt > 0.0,
            "solver.dt must be positive and finite");
    require(std::isfinite(cfg.solver.t_end) && cfg.solver.t_end >= 0.0,
            "solver.t_end must be >= 0 and finite");
    require(cfg.solver.record_every >= 1, "solver.record_every must be >= 1");
  }

  if (const json* b = block(root, "gevrey")) {
    check_keys(*b, "gevrey", {"sigma", "s"});
    read(*b, "sigma", cfg.gevrey.sigma, "gevrey");
    read(*b, "s", cfg.gevrey.s, "gevrey");
    require(std::isfinite(cfg.gevrey.sigma) && cfg.gevrey.sigma >= 0.0,
            "gevrey.sigma must be >= 0 and finite");
    require(std::isfinite(cfg.gevrey.s), "gevrey.s must be finite");
  }

  if (const json* b = block(root, "fit")) {
    check_keys(*b, "fit", {"noise_floor_rel", "xi_lo", "cap"});
    read(*b, "noise_floor_rel", cfg.fit.noise_floor_rel, "fit");
    read(*b, "xi_lo", cfg.fit.xi_lo, "fit");
    read(*b, "cap", cfg.fit.cap, "fit");
    require(cfg.fit.noise_floor_rel > 0.0 && cfg.fit.noise_floor_rel < 1.0,
            "fit.noise_floor_rel must lie in (0, 1)");
    require(cfg.fit.xi_lo >= 0.0, "fit.xi_lo must be >= 0");
    require(cfg.fit.cap > 0.0, "fit.cap must be > 0");
  }

  if (const json* b = block(root, "picard")) {
    check_keys(*b, "picard", {"delta", "slices", "n_max", "tol"});
    read(*b, "delta", cfg.picard.delta, "picard");
    read(*b, "slices", cfg.picard.options.slices, "picard");
    read(*b, "n_max", cfg.picard.options.n_max, "picard");
    read(*b, "tol", cfg.picard.options.tol, "picard");
    require(cfg.picard.delta > 0.0, "picard.delta must be > 0");
    require(cfg.picard.options.slices >= 2, "picard.slices must be >= 2");
    require(cfg.picard.options.n_max >= 1, "picard.n_max must be >= 1");
    require(cfg.picard.options.tol > 0.0, "picard.tol must be > 0");
  }

  if (const json* b = block(root, "growth")) {
    check_keys(*b, "growth", {"delta", "sigmas"});
    read(*b, "delta", cfg.growth.delta, "growth");
    read(*b, "sigmas", cfg.growth.sigmas, "growth");
    require(cfg.growth.delta > 0.0, "growth.delta must be > 0");
    require(!cfg.growth.sigmas.empty(), "growth.sigmas must be nonempty");
    for (double s : cfg.growth.sigmas)
      require(std::isfinite(s) && s > 0.0, "growth.sigmas must be > 0");
  }

  if (const json* b = block(root, "counterexample")) {
    check_keys(*b, "counterexample", {"rho", "n_ladder", "variants", "res_xi",
                                      "res_xi1", "res_mu", "res_mu1"});
    read(*b, "rho", cfg.counterexample.rho, "counterexample");
    read(*b, "n_ladder", cfg.counterexample.n_ladder, "counterexample");
    if (b->contains("variants")) {
      std::vector<std::string> names;
      read(*b, "variants", names, "counterexample");
      cfg.counterexample.variants.clear();
      for (const std::string& n : names)
        cfg.counterexample.variants.push_back(
            counterexample_variant_from_string(n));
    }
    read(*b, "res_xi", cfg.counterexample.res_xi, "counterexample");
    read(*b, "res_xi1", cfg.counterexample.res_xi1, "counterexample");
    read(*b, "res_mu", cfg.counterexample.res_mu, "counterexample");
    read(*b, "res_mu1", cfg.counterexample.res_mu1, "counterexample");
    require(cfg.counterexample.rho >= 0.0 && cfg.counterexample.rho <= 1.0,
            "counterexample.rho must lie in [0, 1]");
    require(!cfg.counterexample.n_ladder.empty(),
            "counterexample.n_ladder must be nonempty");
    for (double n : cfg.counterexample.n_ladder)
      require(std::isfinite(n) && n > 0.0,
              "counterexample.n_ladder entries must be > 0");
    require(!cfg.counterexample.variants.empty(),
            "counterexample.variants must be nonempty");
  }

  if (const json* b = block(root, "kpv")) {
    check_keys(*b, "kpv", {"n_xi", "n_tau", "dxi", "dtau", "sigma", "s", "b",
                           "bprime_grid", "draws"});
    read(*b, "n_xi", cfg.kpv.n_xi, "kpv");
    read(*b, "n_tau", cfg.kpv.n_tau, "kpv");
    read(*b, "dxi", cfg.kpv.dxi, "kpv");
    read(*b, "dtau", cfg.kpv.dtau, "kpv");
    read(*b, "sigma", cfg.kpv.sigma, "kpv");
    read(*b, "s", cfg.kpv.s, "kpv");
    read(*b, "b", cfg.kpv.b, "kpv");
    read(*b, "bprime_grid", cfg.kpv.bprime_grid, "kpv");
    read(*b, "draws", cfg.kpv.draws, "kpv");
    require(cfg.kpv.dxi > 0.0 && cfg.kpv.dtau > 0.0,
            "kpv.dxi and kpv.dtau must be > 0");
    require(cfg.kpv.sigma >= 0.0, "kpv.sigma must be >= 0");
    require(!cfg.kpv.bprime_grid.empty(), "kpv.bprime_grid must be nonempty");
    require(cfg.kpv.draws >= 1, "kpv.draws must be >= 1");
  }

  if (const json* b = block(root, "continuation")) {
    check_keys(*b, "continuation",
               {"params", "t_end", "t_ladder", "calibrate"});
    if (const json* p = block(*b, "params")) {
      check_keys(*p, "continuation.params", {"c0", "a", "C", "rho", "sigma0"});
      read(*p, "c0", cfg.continuation.params.c0, "continuation.params");
      read(*p, "a", cfg.continuation.params.a, "continuation.params");
      read(*p, "C", cfg.continuation.params.C, "continuation.params");
      read(*p, "rho", cfg.continuation.params.rho, "continuation.params");
      read(*p, "sigma0", cfg.continuation.params.sigma0, "continuation.params");
      const ContinuationParams& cp = cfg.continuation.params;
      require(cp.c0 > 0.0 && cp.a >= 1.0 && cp.C > 0.0 && cp.rho > 0.0 &&
                  cp.rho <= 1.0 && cp.sigma0 > 0.0,
              "continuation.params need c0 > 0, a >= 1, C > 0, rho in (0,1], "
              "sigma0 > 0");
    }
    read(*b, "t_end", cfg.continuation.t_end, "continuation");
    read(*b, "t_ladder", cfg.continuation.t_ladder, "continuation");
    read(*b, "calibrate", cfg.continuation.calibrate, "continuation");
    require(cfg.continuation.t_end > 0.0, "continuation.t_end must be > 0");
    require(!cfg.continuation.t_ladder.empty(),
            "continuation.t_ladder must be nonempty");
    for (double t : cfg.continuation.t_ladder)
      require(std::isfinite(t) && t > 0.0,
              "continuation.t_ladder entries must be > 0");
  }

  return cfg;
}

Config load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string effective_config_json(const Config& cfg) {
  json root;
  root["grid"] = {{"n", cfg.grid_n}, {"length", cfg.grid_length}};
  root["initial"] = {{"preset", std::string(to_string(cfg.initial.preset))},
                     {"kappa", cfg.initial.kappa},
                     {"x0", cfg.initial.x0},
                     {"kappa2", cfg.initial.kappa2},
                     {"x2", cfg.initial.x2},
                     {"amplitude", cfg.initial.amplitude},
                     {"center", cfg.initial.center},
                     {"decay", cfg.initial.decay}};
  root["solver"] = {{"dt", cfg.solver.dt},
                    {"t_end", cfg.solver.t_end},
                    {"dealias", cfg.solver.dealias_on},
                    {"record_every", cfg.solver.record_every}};
  root["gevrey"] = {{"sigma", cfg.gevrey.sigma}, {"s", cfg.gevrey.s}};
  root["fit"] = {{"noise_floor_rel", cfg.fit.noise_floor_rel},
                 {"xi_lo", cfg.fit.xi_lo},
                 {"cap", cfg.fit.cap}};
  root["picard"] = {{"delta", cfg.picard.delta},
                    {"slices", cfg.picard.options.slices},
                    {"n_max", cfg.picard.options.n_max},
                    {"tol", cfg.picard.options.tol}};
  root["growth"] = {{"delta", cfg.growth.delta},
                    {"sigmas", cfg.growth.sigmas}};
  std::vector<std::string> variant_names;
  for (CounterexampleVariant v : cfg.counterexample.variants)
    variant_names.push_back(std::string(to_string(v)));
  root["counterexample"] = {{"rho", cfg.counterexample.rho},
                            {"n_ladder", cfg.counterexample.n_ladder},
                            {"variants", variant_names},
                            {"res_xi", cfg.counterexample.res_xi},
                            {"res_xi1", cfg.counterexample.res_xi1},
                            {"res_mu", cfg.counterexample.res_mu},
                            {"res_mu1", cfg.counterexample.res_mu1}};
  root["kpv"] = {{"n_xi", cfg.kpv.n_xi},
                 {"n_tau", cfg.kpv.n_tau},
                 {"dxi", cfg.kpv.dxi},
                 {"dtau", cfg.kpv.dtau},
                 {"sigma", cfg.kpv.sigma},
                 {"s", cfg.kpv.s},
                 {"b", cfg.kpv.b},
                 {"bprime_grid", cfg.kpv.bprime_grid},
                 {"draws", cfg.kpv.draws}};
  root["continuation"] = {{"params",
                           {{"c0", cfg.continuation.params.c0},
                            {"a", cfg.continuation.params.a},
                            {"C", cfg.continuation.params.C},
                            {"rho", cfg.continuation.params.rho},
                            {"sigma0", cfg.continuation.params.sigma0}}},
                          {"t_end", cfg.continuation.t_end},
                          {"t_ladder", cfg.continuation.t_ladder},
                          {"calibrate", cfg.continuation.calibrate}};
  return root.dump(2);
}

RealField make_initial(const Config& cfg, Rng& rng) {
  const GridSpec g = cfg.grid();
  const InitialSpec& ic = cfg.initial;
  switch (ic.preset) {
    case Preset::soliton: return make_soliton(g, ic.kappa, ic.x0);
    case Preset::two_soliton:
      return make_two_soliton(g, ic.kappa, ic.x0, ic.kappa2, ic.x2);
    case Preset::gaussian: return make_gaussian(g, ic.amplitude, ic.center);
    case Preset::lorentzian: return make_lorentzian(g);
    case Preset::sech2: return make_sech2(g);
    case Preset::random_band:
      return make_random_band(g, ic.amplitude, ic.decay, rng);
    case Preset::zero: return make_zero(g);
  }
  throw InputError("unknown preset");
}

}  // namespace kdvlab
