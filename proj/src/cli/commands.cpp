#include "hardynls/cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "hardynls/cli/output.hpp"
#include "hardynls/errors.hpp"
#include "hardynls/evolution.hpp"
#include "hardynls/functionals.hpp"
#include "hardynls/kelvin.hpp"
#include "hardynls/stability.hpp"
#include "hardynls/version.hpp"

namespace hardynls::cli {

using nlohmann::json;
namespace fs = std::filesystem;

Params make_params(const ParamsConfig& c) {
  Params p;
  p.N = c.N;
  p.q = c.q;
  p.gamma = c.gamma;
  if (c.weight) {
    const auto& w = *c.weight;
    if (w.radii.empty()) {
      p.weight = WeightSpec::power_law(w.omega_zero, w.omega_inf, w.r_c);
    } else {
      WeightSpec s;
      s.omega_zero = w.omega_zero;
      s.omega_inf = w.omega_inf;
      s.radii = w.radii;
      s.values = w.values;
      p.weight = s;
    }
  }
  return p;
}

GridPtr make_grid(const GridConfig& c, int n_override) {
  const int n = n_override > 0 ? n_override : c.n;
  return build_grid(static_cast<std::size_t>(n), c.r_min, c.r_max, parse_grading(c.grading));
}

FlowOptions make_flow_options(const FlowConfig& c) {
  FlowOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.dt0 = c.dt0;
  o.dt_min = c.dt_min;
  o.dt_max = c.dt_max;
  o.dt_growth = c.dt_growth;
  return o;
}

json report_to_json(const InequalityReport& r) {
  json d = json::object();
  for (const auto& [k, v] : r.diagnostics) d[k] = v;
  return {{"check", r.check},
          {"n_samples", r.n_samples},
          {"seed", r.seed},
          {"grid_size", r.grid_size},
          {"min_ratio", r.min_ratio},
          {"max_ratio", r.max_ratio},
          {"empirical_constant", r.empirical_constant},
          {"extreme_sample", r.extreme_sample},
          {"violating_sample", r.violating_sample ? json(*r.violating_sample) : json(nullptr)},
          {"pass", r.pass},
          {"diagnostics", d}};
}

json standing_wave_to_json(const StandingWave& sw, int N) {
  const double fit = surface_term_limit(to_u(sw.v, N), N).value;
  bool monotone = true;
  for (std::size_t k = 1; k < sw.J_history.size(); ++k) {
    monotone = monotone && sw.J_history[k] <= sw.J_history[k - 1] + 1e-12;
  }
  return {{"gamma", sw.gamma},
          {"lambda", sw.lambda},
          {"E", sw.energies.E},
          {"J", sw.energies.J},
          {"dirichlet_mu", sw.energies.dirichlet_mu},
          {"mass_mu", sw.energies.mass_mu},
          {"nonlinear", sw.energies.nonlinear},
          {"h_norm_sq", sw.energies.h_norm_sq},
          {"residual", sw.residual},
          {"v0", sw.v0},
          {"exponent", sw.exponent},
          {"Lambda_origin", sw.Lambda_origin},
          {"Lambda_fit", fit},
          {"iterations", sw.iterations},
          {"final_dt", sw.final_dt},
          {"J_monotone", monotone}};
}

namespace {

struct Context {
  const RunConfig& cfg;
  std::string hash;
  fs::path dir;
  CommandResult result;

  // The output directory is left out so that artifacts do not depend on
  // where they were written.
  json header() const {
    json c = config_to_json(cfg);
    c.erase("output_dir");
    return {{"config_hash", hash}, {"version", kVersion}, {"command", cfg.command}, {"config", c}};
  }

  void write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    write_file(p, text);
    result.files.push_back(p);
  }

  void write_json(const std::string& name, json body) {
    json j = header();
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    result.summary = j;
    write(name, dump_json(j));
  }
};

StandingWave solve_ground_state(const RunConfig& cfg, const Params& p, const GridPtr& grid) {
  const Field init = cfg.flow.init == "exponential" ? exponential_init(grid, p)
                                                    : gaussian_init(grid, p);
  return normalized_gradient_flow(p, grid, init, make_flow_options(cfg.flow));
}

// The flow accepts the closed range up to 2 + 4/N; time-dependent commands
// were already held to the open range by validate_config.
void cmd_ground_state(Context& ctx) {
  const Params p = make_params(ctx.cfg.params);
  const GridPtr grid = make_grid(ctx.cfg.grid);
  const StandingWave sw = solve_ground_state(ctx.cfg, p, grid);
  CsvWriter csv(ctx.hash, {"r", "v", "u"});
  const auto& r = grid->nodes();
  const Field u = to_u(sw.v, p.N);
  for (std::size_t i = 0; i < r.size(); ++i) csv.row({r[i], sw.v[i].real(), u[i].real()});
  ctx.write("ground_state_profile.csv", csv.str());
  CsvWriter hist(ctx.hash, {"iteration", "J"});
  for (std::size_t k = 0; k < sw.J_history.size(); ++k) {
    hist.row({static_cast<double>(k), sw.J_history[k]});
  }
  ctx.write("ground_state_history.csv", hist.str());
  ctx.write_json("ground_state_summary.json", {{"standing_wave", standing_wave_to_json(sw, p.N)}});
}

void cmd_evolve(Context& ctx) {
  const auto& ec = ctx.cfg.evolve;
  const Params p = make_params(ctx.cfg.params);
  const GridPtr grid = make_grid(ctx.cfg.grid);
  EvolutionOptions opt;
  opt.scheme = parse_scheme(ec.scheme);
  opt.nonlinear = !ec.linear;

  json extra = json::object();
  Field v0 = Field::zeros(grid);
  std::optional<StandingWave> sw;
  if (ec.initial == "gaussian") {
    v0 = Field::from_function(grid, [](double r) { return std::exp(-0.5 * r * r); });
  } else {
    sw = solve_ground_state(ctx.cfg, p, grid);
    extra["standing_wave"] = standing_wave_to_json(*sw, p.N);
    v0 = ec.initial == "perturbed" ? perturb(*sw, p, ec.delta, parse_perturbation(ec.perturbation))
                                   : sw->v;
  }
  const EvolutionState s0 = make_state(v0, p, opt.nonlinear);
  CsvWriter series(ctx.hash, {"t", "charge", "energy", "charge_drift", "energy_drift",
                              "orbit_distance"});
  double max_dc = 0.0, max_de = 0.0;
  const double e_scale = std::abs(s0.energy0) > 0 ? std::abs(s0.energy0) : 1.0;
  auto record = [&](const EvolutionState& s) {
    const auto [charge, energy] = invariants(s, p, opt.nonlinear);
    const double dc = (charge - s0.charge0) / s0.charge0;
    const double de = (energy - s0.energy0) / e_scale;
    max_dc = std::max(max_dc, std::abs(dc));
    max_de = std::max(max_de, std::abs(de));
    const double dist = sw ? orbit_distance(s.v, *sw, p.N) : std::nan("");
    series.row({s.time, charge, energy, dc, de, dist});
  };
  const EvolutionState end = propagate(s0, p, ec.dt, ec.steps, opt, record, ec.sample_every);
  if (ec.steps % ec.sample_every != 0) record(end);
  ctx.write("evolution_series.csv", series.str());

  CsvWriter prof(ctx.hash, {"r", "re_v", "im_v", "abs_u"});
  const auto& r = grid->nodes();
  const Field u = to_u(end.v, p.N);
  for (std::size_t i = 0; i < r.size(); ++i) {
    prof.row({r[i], end.v[i].real(), end.v[i].imag(), std::abs(u[i])});
  }
  ctx.write("evolution_profile.csv", prof.str());

  extra["final_time"] = end.time;
  extra["steps"] = ec.steps;
  extra["charge0"] = s0.charge0;
  extra["energy0"] = s0.energy0;
  extra["max_charge_drift"] = max_dc;
  extra["max_energy_drift"] = max_de;
  if (ec.initial == "gaussian" && ec.linear) {
    double err = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      err = std::max(err, std::abs(end.v[i] - free_gaussian(r[i], end.time)));
    }
    extra["final_error_sup"] = err;
  } else {
    extra["final_error_sup"] = nullptr;
  }
  if (sw) extra["final_orbit_distance"] = orbit_distance(end.v, *sw, p.N);
  ctx.write_json("evolution_summary.json", extra);
}

void cmd_stability(Context& ctx) {
  const auto& sc = ctx.cfg.stability;
  const Params p = make_params(ctx.cfg.params);
  const GridPtr grid = make_grid(ctx.cfg.grid);
  const StandingWave sw = solve_ground_state(ctx.cfg, p, grid);
  const Perturbation kind = parse_perturbation(sc.perturbation);
  CsvWriter csv(ctx.hash, {"delta", "t", "distance", "charge_drift", "energy_drift"});
  json runs = json::array();
  double constant = 0.0;
  for (double delta : sc.deltas) {
    const StabilityRun run = stability_experiment(p, sw, delta, kind, sc.T, sc.dt);
    double dc = 0.0, de = 0.0;
    for (std::size_t k = 0; k < run.times.size(); ++k) {
      csv.row({delta, run.times[k], run.distances[k], run.charge_drift[k], run.energy_drift[k]});
      dc = std::max(dc, std::abs(run.charge_drift[k]));
      de = std::max(de, std::abs(run.energy_drift[k]));
    }
    constant = std::max(constant, run.ratio());
    runs.push_back({{"delta", delta},
                    {"initial_distance", run.initial_distance},
                    {"max_distance", run.max_distance},
                    {"ratio", run.ratio()},
                    {"max_charge_drift", dc},
                    {"max_energy_drift", de},
                    {"samples", run.times.size()}});
  }
  ctx.write("stability_series.csv", csv.str());
  ctx.write_json("stability_summary.json", {{"standing_wave", standing_wave_to_json(sw, p.N)},
                                            {"perturbation", perturbation_name(kind)},
                                            {"runs", runs},
                                            {"stability_constant", constant}});
}

json refinement_to_json(const RefinementReport& r) {
  return {{"coarse", report_to_json(r.coarse)},
          {"fine", report_to_json(r.fine)},
          {"change", r.change},
          {"pass", r.pass}};
}

void cmd_check(Context& ctx) {
  const auto& cc = ctx.cfg.check;
  const Params p = make_params(ctx.cfg.params);
  if (cc.kind == "hardy") {
    const InequalityReport rep = check_hardy(cc.samples, cc.seed, p.N, make_grid(ctx.cfg.grid));
    ctx.write_json("check_hardy.json", {{"report", report_to_json(rep)}, {"pass", rep.pass}});
  } else if (cc.kind == "ckn") {
    const auto coarse = check_ckn(cc.samples, cc.seed, p, make_grid(ctx.cfg.grid, cc.refine_n));
    const auto fine = check_ckn(cc.samples, cc.seed, p, make_grid(ctx.cfg.grid));
    const RefinementReport r = compare_refinement(coarse, fine);
    ctx.write_json("check_ckn.json", {{"refinement", refinement_to_json(r)}, {"pass", r.pass}});
  } else if (cc.kind == "ihs") {
    const HKind h = parse_h_kind(cc.h_kind);
    const auto coarse = check_ihs(cc.samples, cc.seed, p.N, h, make_grid(ctx.cfg.grid, cc.refine_n));
    const auto fine = check_ihs(cc.samples, cc.seed, p.N, h, make_grid(ctx.cfg.grid));
    const RefinementReport r = compare_refinement(coarse, fine);
    ctx.write_json("check_ihs.json", {{"refinement", refinement_to_json(r)}, {"pass", r.pass}});
  } else {
    Params pw = p;
    const WeightSpec spec = *pw.weight;
    pw.weight.reset();
    const WeightVerdict v = check_weight_condition(spec, pw);
    ctx.write_json("check_weight.json",
                   {{"omega_zero", spec.omega_zero},
                    {"omega_inf", spec.omega_inf},
                    {"threshold", v.threshold},
                    {"condition", v.condition},
                    {"lp_exponent", v.lp_exponent},
                    {"l1_norm", v.l1_norm},
                    {"lp_norm", v.lp_norm},
                    {"integrability", v.integrability},
                    {"pass", v.condition}});
  }
}

void cmd_kelvin(Context& ctx) {
  const auto& kc = ctx.cfg.kelvin;
  const int N = ctx.cfg.params.N;
  const KelvinVerification v =
      verify_kelvin(make_grid(ctx.cfg.grid), N, kc.samples, kc.seed, kc.tail_coefficient);
  ctx.write_json("kelvin_summary.json",
                 {{"nodes_exact", v.nodes_exact},
                  {"involution_error", v.involution_error},
                  {"samples", v.samples},
                  {"max_equivalence_error", v.max_equivalence_error},
                  {"tail_coefficient", v.tail_coefficient},
                  {"Lambda_inf", v.Lambda_inf},
                  {"Lambda_expected", v.Lambda_expected},
                  {"Lambda_rel_error", v.Lambda_rel_error},
                  {"psi_excess", v.psi_excess},
                  {"w_excess", v.w_excess}});
}

json error_details(const Error& e) {
  json d = {{"kind", e.kind()}, {"message", e.what()}};
  if (auto* c = dynamic_cast<const ConfigError*>(&e)) d["field"] = c->field;
  if (auto* c = dynamic_cast<const ConvergenceError*>(&e)) {
    d["iterations"] = c->iterations;
    d["last_J"] = c->last_J;
    d["last_residual"] = c->last_residual;
  }
  if (auto* s = dynamic_cast<const StepError*>(&e)) {
    d["time"] = s->time;
    d["fixed_point_iterations"] = s->fixed_point_iterations;
    d["last_update"] = s->last_update;
  }
  if (auto* b = dynamic_cast<const BlowUpError*>(&e)) d["time"] = b->time;
  return d;
}

}  // namespace

namespace {

CommandResult write_error(Context& ctx, int code, json details) {
  ctx.result.exit_code = code;
  try {
    ctx.write_json("error.json", {{"error", std::move(details)}});
  } catch (const std::exception&) {
    ctx.result.summary = {{"error", details}};
  }
  return ctx.result;
}

}  // namespace

CommandResult report_error(const RunConfig& cfg, int exit_code, const Error& e) {
  Context ctx{cfg, config_hash(cfg), fs::path(cfg.output_dir), {}};
  return write_error(ctx, exit_code, error_details(e));
}

CommandResult run_command(const RunConfig& cfg) {
  Context ctx{cfg, config_hash(cfg), fs::path(cfg.output_dir), {}};
  auto fail = [&](int code, json details) { return write_error(ctx, code, std::move(details)); };
  try {
    validate_config(cfg);
  } catch (const Error& e) {
    return fail(kConfigError, error_details(e));
  }
  try {
    if (cfg.command == "ground-state") cmd_ground_state(ctx);
    else if (cfg.command == "evolve") cmd_evolve(ctx);
    else if (cfg.command == "stability") cmd_stability(ctx);
    else if (cfg.command == "check") cmd_check(ctx);
    else cmd_kelvin(ctx);
  } catch (const ParameterError& e) {
    return fail(kConfigError, error_details(e));
  } catch (const Error& e) {
    return fail(kNumericalError, error_details(e));
  } catch (const std::exception& e) {
    return fail(kNumericalError, {{"kind", "internal"}, {"message", e.what()}});
  }
  return ctx.result;
}

}  // namespace hardynls::cli
