#include "hardynls/cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "hardynls/evolution.hpp"
#include "hardynls/inequalities.hpp"
#include "hardynls/params.hpp"
#include "hardynls/radial_grid.hpp"
#include "hardynls/stability.hpp"

namespace hardynls::cli {

using nlohmann::json;

nlohmann::json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["params"] = {{"N", c.params.N}, {"q", c.params.q}, {"gamma", c.params.gamma}};
  if (c.params.weight) {
    const auto& w = *c.params.weight;
    j["params"]["weight"] = {{"omega_zero", w.omega_zero},
                             {"omega_inf", w.omega_inf},
                             {"r_c", w.r_c},
                             {"radii", w.radii},
                             {"values", w.values}};
  } else {
    j["params"]["weight"] = nullptr;
  }
  j["grid"] = {{"n", c.grid.n},
               {"r_min", c.grid.r_min},
               {"r_max", c.grid.r_max},
               {"grading", c.grid.grading}};
  j["flow"] = {{"tol", c.flow.tol},         {"max_iter", c.flow.max_iter},
               {"dt0", c.flow.dt0},         {"dt_min", c.flow.dt_min},
               {"dt_max", c.flow.dt_max},   {"dt_growth", c.flow.dt_growth},
               {"init", c.flow.init}};
  j["evolve"] = {{"initial", c.evolve.initial},
                 {"scheme", c.evolve.scheme},
                 {"linear", c.evolve.linear},
                 {"dt", c.evolve.dt},
                 {"steps", c.evolve.steps},
                 {"sample_every", c.evolve.sample_every},
                 {"delta", c.evolve.delta},
                 {"perturbation", c.evolve.perturbation}};
  j["stability"] = {{"deltas", c.stability.deltas},
                    {"perturbation", c.stability.perturbation},
                    {"T", c.stability.T},
                    {"dt", c.stability.dt}};
  j["check"] = {{"kind", c.check.kind},
                {"samples", c.check.samples},
                {"seed", c.check.seed},
                {"h_kind", c.check.h_kind},
                {"refine_n", c.check.refine_n}};
  j["kelvin"] = {{"samples", c.kelvin.samples},
                 {"seed", c.kelvin.seed},
                 {"tail_coefficient", c.kelvin.tail_coefficient}};
  j["output_dir"] = c.output_dir;
  return j;
}

namespace {

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  ~Reader() = default;

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(field(it.key()), "unknown key");
    }
  }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer()) throw ConfigError(field(key), "expected an integer");
        out = it->template get<int>();
      } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->template get<long long>() >= 0)) {
          throw ConfigError(field(key), "expected a nonnegative integer");
        }
        out = it->template get<std::uint64_t>();
      } else if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError(field(key), "expected a number");
        out = it->template get<double>();
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw ConfigError(field(key), "expected true or false");
        out = it->template get<bool>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw ConfigError(field(key), "expected a string");
        out = it->template get<std::string>();
      } else if constexpr (std::is_same_v<T, std::vector<double>>) {
        if (!it->is_array()) throw ConfigError(field(key), "expected an array of numbers");
        out.clear();
        for (const auto& x : *it) {
          if (!x.is_number()) throw ConfigError(field(key), "expected an array of numbers");
          out.push_back(x.template get<double>());
        }
      }
    } catch (const json::exception& e) {
      throw ConfigError(field(key), e.what());
    }
  }

  const json* child(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  Reader root(j, "");
  root.get("command", c.command);
  root.get("output_dir", c.output_dir);
  if (const json* p = root.child("params")) {
    Reader r(*p, "params");
    r.get("N", c.params.N);
    r.get("q", c.params.q);
    r.get("gamma", c.params.gamma);
    if (const json* w = r.child("weight")) {
      Reader rw(*w, "params.weight");
      WeightConfig wc;
      rw.get("omega_zero", wc.omega_zero);
      rw.get("omega_inf", wc.omega_inf);
      rw.get("r_c", wc.r_c);
      rw.get("radii", wc.radii);
      rw.get("values", wc.values);
      rw.finish();
      c.params.weight = wc;
    }
    r.finish();
  }
  if (const json* p = root.child("grid")) {
    Reader r(*p, "grid");
    r.get("n", c.grid.n);
    r.get("r_min", c.grid.r_min);
    r.get("r_max", c.grid.r_max);
    r.get("grading", c.grid.grading);
    r.finish();
  }
  if (const json* p = root.child("flow")) {
    Reader r(*p, "flow");
    r.get("tol", c.flow.tol);
    r.get("max_iter", c.flow.max_iter);
    r.get("dt0", c.flow.dt0);
    r.get("dt_min", c.flow.dt_min);
    r.get("dt_max", c.flow.dt_max);
    r.get("dt_growth", c.flow.dt_growth);
    r.get("init", c.flow.init);
    r.finish();
  }
  if (const json* p = root.child("evolve")) {
    Reader r(*p, "evolve");
    r.get("initial", c.evolve.initial);
    r.get("scheme", c.evolve.scheme);
    r.get("linear", c.evolve.linear);
    r.get("dt", c.evolve.dt);
    r.get("steps", c.evolve.steps);
    r.get("sample_every", c.evolve.sample_every);
    r.get("delta", c.evolve.delta);
    r.get("perturbation", c.evolve.perturbation);
    r.finish();
  }
  if (const json* p = root.child("stability")) {
    Reader r(*p, "stability");
    r.get("deltas", c.stability.deltas);
    r.get("perturbation", c.stability.perturbation);
    r.get("T", c.stability.T);
    r.get("dt", c.stability.dt);
    r.finish();
  }
  if (const json* p = root.child("check")) {
    Reader r(*p, "check");
    r.get("kind", c.check.kind);
    r.get("samples", c.check.samples);
    r.get("seed", c.check.seed);
    r.get("h_kind", c.check.h_kind);
    r.get("refine_n", c.check.refine_n);
    r.finish();
  }
  if (const json* p = root.child("kelvin")) {
    Reader r(*p, "kelvin");
    r.get("samples", c.kelvin.samples);
    r.get("seed", c.kelvin.seed);
    r.get("tail_coefficient", c.kelvin.tail_coefficient);
    r.finish();
  }
  root.finish();
  return c;
}

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

template <class F>
void rethrow_as(const std::string& field, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

void validate_config(const RunConfig& c) {
  const auto& names = command_names();
  require(std::find(names.begin(), names.end(), c.command) != names.end(), "command",
          "unknown command '" + c.command + "'");
  require(!c.output_dir.empty(), "output_dir", "must not be empty");

  require(c.params.N >= 3, "params.N", "must be >= 3");
  require(std::isfinite(c.params.gamma) && c.params.gamma > 0, "params.gamma", "must be > 0");
  require(std::isfinite(c.params.q), "params.q", "must be finite");
  if (c.params.weight) {
    const auto& w = *c.params.weight;
    require(w.radii.size() == w.values.size(), "params.weight.values",
            "must have the same length as params.weight.radii");
    require(w.r_c > 0, "params.weight.r_c", "must be > 0");
  }

  require(c.grid.n >= 16, "grid.n", "must be >= 16");
  require(c.grid.r_min > 0 && c.grid.r_max > c.grid.r_min && std::isfinite(c.grid.r_max),
          "grid.r_min", "need 0 < r_min < r_max");
  rethrow_as("grid.grading", [&] { parse_grading(c.grid.grading); });

  Params p;
  p.N = c.params.N;
  p.q = c.params.q;
  p.gamma = c.params.gamma;
  const std::string& cmd = c.command;
  if (cmd == "ground-state") {
    rethrow_as("params.q", [&] { p.validate(QRange::GroundState); });
    require(c.flow.tol > 0, "flow.tol", "must be > 0");
    require(c.flow.max_iter >= 1, "flow.max_iter", "must be >= 1");
    require(c.flow.dt0 > 0, "flow.dt0", "must be > 0");
    require(c.flow.dt_min > 0, "flow.dt_min", "must be > 0");
    require(c.flow.dt_max >= c.flow.dt0, "flow.dt_max", "must be >= flow.dt0");
    require(c.flow.dt_growth >= 1, "flow.dt_growth", "must be >= 1");
    require(c.flow.init == "gaussian" || c.flow.init == "exponential", "flow.init",
            "must be gaussian or exponential");
  } else if (cmd == "evolve") {
    rethrow_as("params.q", [&] { p.validate(QRange::Stability); });
    rethrow_as("evolve.scheme", [&] { parse_scheme(c.evolve.scheme); });
    require(c.evolve.initial == "gaussian" || c.evolve.initial == "standing-wave" ||
                c.evolve.initial == "perturbed",
            "evolve.initial", "must be gaussian, standing-wave or perturbed");
    require(c.evolve.dt > 0, "evolve.dt", "must be > 0");
    require(c.evolve.steps >= 1, "evolve.steps", "must be >= 1");
    require(c.evolve.sample_every >= 1, "evolve.sample_every", "must be >= 1");
    require(c.evolve.delta >= 0, "evolve.delta", "must be >= 0");
    rethrow_as("evolve.perturbation", [&] { parse_perturbation(c.evolve.perturbation); });
  } else if (cmd == "stability") {
    rethrow_as("params.q", [&] { p.validate(QRange::Stability); });
    require(!c.stability.deltas.empty(), "stability.deltas", "must not be empty");
    for (double d : c.stability.deltas) {
      require(std::isfinite(d) && d >= 0, "stability.deltas", "entries must be >= 0");
    }
    rethrow_as("stability.perturbation", [&] { parse_perturbation(c.stability.perturbation); });
    require(c.stability.T > 0, "stability.T", "must be > 0");
    require(c.stability.dt > 0 && c.stability.T / c.stability.dt >= 99.5, "stability.dt",
            "must be > 0 with T / dt >= 100");
  } else if (cmd == "check") {
    const std::string& k = c.check.kind;
    require(k == "hardy" || k == "ckn" || k == "weight" || k == "ihs", "check.kind",
            "must be hardy, ckn, weight or ihs");
    require(c.check.samples >= 1, "check.samples", "must be >= 1");
    require(c.check.refine_n >= 16, "check.refine_n", "must be >= 16");
    if (k == "ckn") rethrow_as("params.q", [&] { p.validate(QRange::Inequality); });
    if (k == "ihs") rethrow_as("check.h_kind", [&] { parse_h_kind(c.check.h_kind); });
    if (k == "weight") {
      const double crit = 2.0 * p.N / (p.N - 2);
      require(p.q >= 1 && p.q < crit, "params.q", "weight check needs 1 <= q < 2N/(N-2)");
      require(c.params.weight.has_value(), "params.weight", "required for check weight");
    }
  } else if (cmd == "kelvin-verify") {
    require(c.kelvin.samples >= 1, "kelvin.samples", "must be >= 1");
    require(std::isfinite(c.kelvin.tail_coefficient), "kelvin.tail_coefficient",
            "must be finite");
  }
}

std::string config_hash(const RunConfig& cfg) {
  json j = config_to_json(cfg);
  j.erase("output_dir");
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hardynls::cli
