#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardynls/errors.hpp"

namespace hardynls::cli {

/// Invalid or malformed configuration; field is the dotted JSON path.
class ConfigError : public ParameterError {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : ParameterError(field + ": " + what), field(field) {}
  const char* kind() const noexcept override { return "config"; }
  std::string field;
};

struct WeightConfig {
  double omega_zero = 0.0;
  double omega_inf = -2.0;
  double r_c = 1.0;
  // explicit table; empty means the power-law profile built from the exponents
  std::vector<double> radii;
  std::vector<double> values;
};

struct ParamsConfig {
  int N = 3;
  double q = 3.0;
  double gamma = 1.0;
  std::optional<WeightConfig> weight;
};

struct GridConfig {
  int n = 8192;
  double r_min = 1e-4;
  double r_max = 50.0;
  std::string grading = "log";
};

struct FlowConfig {
  double tol = 1e-7;
  int max_iter = 200000;
  double dt0 = 0.1;
  double dt_min = 1e-6;
  double dt_max = 50.0;
  double dt_growth = 1.25;
  std::string init = "gaussian";  // gaussian | exponential
};

struct EvolveConfig {
  std::string initial = "gaussian";  // gaussian | standing-wave | perturbed
  std::string scheme = "crank-nicolson";
  bool linear = false;
  double dt = 1e-3;
  int steps = 1000;
  int sample_every = 10;
  double delta = 1e-2;  // for initial = perturbed
  std::string perturbation = "radial-bump";
};

struct StabilityConfig {
  std::vector<double> deltas{0.0, 1e-3, 1e-2};
  std::string perturbation = "radial-bump";
  double T = 20.0;
  double dt = 1e-2;
};

struct CheckConfig {
  std::string kind = "hardy";  // hardy | ckn | weight | ihs
  int samples = 1000;
  std::uint64_t seed = 42;
  std::string h_kind = "piecewise-paper";
  int refine_n = 4096;  // coarse grid size for the refinement comparison
};

struct KelvinConfig {
  int samples = 100;
  std::uint64_t seed = 42;
  double tail_coefficient = 0.7;
};

struct RunConfig {
  std::string command = "ground-state";
  ParamsConfig params;
  GridConfig grid;
  FlowConfig flow;
  EvolveConfig evolve;
  StabilityConfig stability;
  CheckConfig check;
  KelvinConfig kelvin;
  std::string output_dir = "out";
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ground-state", "evolve", "stability",
                                              "check", "kelvin-verify"};
  return names;
}

nlohmann::json config_to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys and wrong types raise
/// ConfigError naming the field.
RunConfig config_from_json(const nlohmann::json& j);

/// Range checks for the selected command; throws ConfigError.
void validate_config(const RunConfig& cfg);

/// FNV-1a 64 of the canonical (sorted-key) JSON of everything except the
/// output directory, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace hardynls::cli
