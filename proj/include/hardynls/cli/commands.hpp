#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardynls/cli/run_config.hpp"
#include "hardynls/errors.hpp"
#include "hardynls/ground_state.hpp"
#include "hardynls/inequalities.hpp"
#include "hardynls/params.hpp"
#include "hardynls/radial_grid.hpp"

namespace hardynls::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kNumericalError = 2 };

struct CommandResult {
  int exit_code = kSuccess;
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;
};

Params make_params(const ParamsConfig& c);
GridPtr make_grid(const GridConfig& c, int n_override = 0);
FlowOptions make_flow_options(const FlowConfig& c);

nlohmann::json report_to_json(const InequalityReport& r);
nlohmann::json standing_wave_to_json(const StandingWave& sw, int N);

/// Validates, runs and writes every artifact of cfg.command into
/// cfg.output_dir. Errors never escape: configuration problems give exit 1,
/// numerical failures exit 2, both with an error.json next to the outputs.
CommandResult run_command(const RunConfig& cfg);

/// Writes error.json for a failure detected outside run_command, such as an
/// unreadable config file.
CommandResult report_error(const RunConfig& cfg, int exit_code, const Error& e);

}  // namespace hardynls::cli
