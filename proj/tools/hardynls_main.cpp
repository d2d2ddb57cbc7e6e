#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hardynls/cli/commands.hpp"
#include "hardynls/cli/run_config.hpp"
#include "hardynls/version.hpp"

using hardynls::cli::RunConfig;

namespace {

// Command-line flags override the config file, which overrides defaults.
class Overrides {
 public:
  template <class T>
  void add(CLI::App* app, const std::string& flag, const std::string& help,
           std::function<void(RunConfig&, const T&)> set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    if constexpr (std::is_same_v<T, std::vector<double>>) opt->delimiter(',');
    apply_.push_back([value, opt, set](RunConfig& c) {
      if (opt->count() > 0) set(c, *value);
    });
  }

  void add_flag(CLI::App* app, const std::string& flag, const std::string& help,
                std::function<void(RunConfig&)> set) {
    CLI::Option* opt = app->add_flag(flag, help);
    apply_.push_back([opt, set](RunConfig& c) {
      if (opt->count() > 0) set(c);
    });
  }

  void apply(RunConfig& c) const {
    for (const auto& f : apply_) f(c);
  }

 private:
  std::vector<std::function<void(RunConfig&)>> apply_;
};

hardynls::cli::WeightConfig& weight_of(RunConfig& c) {
  if (!c.params.weight) c.params.weight.emplace();
  return *c.params.weight;
}

void add_common(CLI::App* app, Overrides& o) {
  o.add<int>(app, "--N", "space dimension (>= 3)", [](RunConfig& c, const int& v) { c.params.N = v; });
  o.add<double>(app, "--q", "nonlinearity exponent", [](RunConfig& c, const double& v) { c.params.q = v; });
  o.add<double>(app, "--gamma", "prescribed mass", [](RunConfig& c, const double& v) { c.params.gamma = v; });
  o.add<double>(app, "--omega-zero", "weight exponent at the origin",
                [](RunConfig& c, const double& v) { weight_of(c).omega_zero = v; });
  o.add<double>(app, "--omega-inf", "weight exponent at infinity",
                [](RunConfig& c, const double& v) { weight_of(c).omega_inf = v; });
  o.add<double>(app, "--r-c", "weight crossover radius",
                [](RunConfig& c, const double& v) { weight_of(c).r_c = v; });
  o.add<int>(app, "--grid-n", "number of grid nodes", [](RunConfig& c, const int& v) { c.grid.n = v; });
  o.add<double>(app, "--r-min", "innermost node", [](RunConfig& c, const double& v) { c.grid.r_min = v; });
  o.add<double>(app, "--r-max", "outermost node", [](RunConfig& c, const double& v) { c.grid.r_max = v; });
  o.add<std::string>(app, "--grading", "log | uniform | reciprocal",
                     [](RunConfig& c, const std::string& v) { c.grid.grading = v; });
  o.add<std::string>(app, "--output-dir,-o", "output directory",
                     [](RunConfig& c, const std::string& v) { c.output_dir = v; });
}

void add_flow(CLI::App* app, Overrides& o) {
  o.add<double>(app, "--tol", "residual tolerance", [](RunConfig& c, const double& v) { c.flow.tol = v; });
  o.add<int>(app, "--max-iter", "iteration budget", [](RunConfig& c, const int& v) { c.flow.max_iter = v; });
  o.add<double>(app, "--dt0", "initial flow step", [](RunConfig& c, const double& v) { c.flow.dt0 = v; });
  o.add<double>(app, "--dt-min", "smallest flow step", [](RunConfig& c, const double& v) { c.flow.dt_min = v; });
  o.add<double>(app, "--dt-max", "largest flow step", [](RunConfig& c, const double& v) { c.flow.dt_max = v; });
  o.add<double>(app, "--dt-growth", "step growth factor",
                [](RunConfig& c, const double& v) { c.flow.dt_growth = v; });
  o.add<std::string>(app, "--init", "gaussian | exponential",
                     [](RunConfig& c, const std::string& v) { c.flow.init = v; });
}

int emit(const hardynls::cli::CommandResult& res) {
  for (const auto& f : res.files) std::cout << f.string() << "\n";
  if (res.exit_code != 0 && res.summary.contains("error")) {
    const auto& e = res.summary["error"];
    std::cerr << "error (" << e.value("kind", "error") << "): " << e.value("message", "") << "\n";
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial standing waves with a critical inverse-square potential"};
  app.set_version_flag("--version", std::string(hardynls::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  Overrides o;

  auto* gs = app.add_subcommand("ground-state", "normalized gradient flow for the ground state");
  auto* ev = app.add_subcommand("evolve", "time evolution in the transformed variable");
  auto* st = app.add_subcommand("stability", "orbital stability experiment");
  auto* ck = app.add_subcommand("check", "inequality checks");
  auto* kv = app.add_subcommand("kelvin-verify", "Kelvin transform checks");

  for (auto* sub : {gs, ev, st, ck, kv}) {
    sub->add_option("--config,-c", config_path, "JSON config file")->check(CLI::ExistingFile);
    add_common(sub, o);
  }
  add_flow(gs, o);
  add_flow(ev, o);
  add_flow(st, o);

  o.add<std::string>(ev, "--initial", "gaussian | standing-wave | perturbed",
                     [](RunConfig& c, const std::string& v) { c.evolve.initial = v; });
  o.add<std::string>(ev, "--scheme", "crank-nicolson | strang-splitting",
                     [](RunConfig& c, const std::string& v) { c.evolve.scheme = v; });
  o.add_flag(ev, "--linear", "drop the nonlinear term", [](RunConfig& c) { c.evolve.linear = true; });
  o.add<double>(ev, "--dt", "time step", [](RunConfig& c, const double& v) { c.evolve.dt = v; });
  o.add<int>(ev, "--steps", "number of steps", [](RunConfig& c, const int& v) { c.evolve.steps = v; });
  o.add<int>(ev, "--sample-every", "steps between samples",
             [](RunConfig& c, const int& v) { c.evolve.sample_every = v; });
  o.add<double>(ev, "--delta", "perturbation size", [](RunConfig& c, const double& v) { c.evolve.delta = v; });
  o.add<std::string>(ev, "--perturbation", "radial-bump | phase-ramp | mass-preserving-deformation",
                     [](RunConfig& c, const std::string& v) { c.evolve.perturbation = v; });

  o.add<std::vector<double>>(st, "--deltas", "perturbation sizes",
                             [](RunConfig& c, const std::vector<double>& v) { c.stability.deltas = v; });
  o.add<std::string>(st, "--perturbation", "radial-bump | phase-ramp | mass-preserving-deformation",
                     [](RunConfig& c, const std::string& v) { c.stability.perturbation = v; });
  o.add<double>(st, "--T", "final time", [](RunConfig& c, const double& v) { c.stability.T = v; });
  o.add<double>(st, "--dt", "time step", [](RunConfig& c, const double& v) { c.stability.dt = v; });

  auto kind = std::make_shared<std::string>();
  ck->add_option("kind", *kind, "hardy | ckn | weight | ihs")->required();
  o.add<int>(ck, "--samples", "number of random samples",
             [](RunConfig& c, const int& v) { c.check.samples = v; });
  o.add<std::uint64_t>(ck, "--seed", "random seed",
                       [](RunConfig& c, const std::uint64_t& v) { c.check.seed = v; });
  o.add<std::string>(ck, "--h-kind", "piecewise-paper | log-weight",
                     [](RunConfig& c, const std::string& v) { c.check.h_kind = v; });
  o.add<int>(ck, "--refine-n", "coarse grid size for the refinement comparison",
             [](RunConfig& c, const int& v) { c.check.refine_n = v; });

  o.add<int>(kv, "--samples", "number of random samples",
             [](RunConfig& c, const int& v) { c.kelvin.samples = v; });
  o.add<std::uint64_t>(kv, "--seed", "random seed",
                       [](RunConfig& c, const std::uint64_t& v) { c.kelvin.seed = v; });
  o.add<double>(kv, "--tail-coefficient", "tail amplitude of the synthetic dual field",
                [](RunConfig& c, const double& v) { c.kelvin.tail_coefficient = v; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hardynls::cli::kConfigError;
  }

  RunConfig cfg;
  const char* env_dir = std::getenv("HARDYNLS_OUT_DIR");
  if (env_dir != nullptr && *env_dir != '\0') cfg.output_dir = env_dir;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(buf.str());
      } catch (const nlohmann::json::exception& e) {
        throw hardynls::cli::ConfigError("<root>", std::string("invalid JSON: ") + e.what());
      }
      const bool has_dir = j.is_object() && j.contains("output_dir");
      const std::string dir = cfg.output_dir;
      cfg = hardynls::cli::config_from_json(j);
      if (!has_dir) cfg.output_dir = dir;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "check") cfg.check.kind = *kind;
    o.apply(cfg);
  } catch (const hardynls::Error& e) {
    try {
      o.apply(cfg);
    } catch (const hardynls::Error&) {
      // keep whatever output directory was already resolved
    }
    return emit(hardynls::cli::report_error(cfg, hardynls::cli::kConfigError, e));
  }
  return emit(hardynls::cli::run_command(cfg));
}
