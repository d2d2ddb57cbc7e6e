#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hardynls/cli/commands.hpp"
#include "hardynls/cli/output.hpp"
#include "hardynls/cli/run_config.hpp"
#include "hardynls/random_fields.hpp"
#include "hardynls/version.hpp"

using namespace hardynls;
using namespace hardynls::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hardynls_test_" + name);
  fs::remove_all(p);
  return p;
}

RunConfig random_config(Rng& rng) {
  RunConfig c;
  const auto& names = command_names();
  c.command = names[static_cast<std::size_t>(rng.integer(0, static_cast<int>(names.size()) - 1))];
  c.params.N = rng.integer(3, 7);
  c.params.q = rng.uniform(2.01, 3.0);
  c.params.gamma = rng.uniform(0.1, 10.0);
  if (rng.uniform() < 0.5) {
    WeightConfig w;
    w.omega_zero = rng.uniform(-1, 0);
    w.omega_inf = rng.uniform(-4, -2);
    w.r_c = rng.uniform(0.5, 2);
    c.params.weight = w;
  }
  c.grid.n = rng.integer(16, 10000);
  c.grid.r_min = rng.uniform(1e-6, 1e-3);
  c.grid.r_max = rng.uniform(10, 100);
  c.flow.tol = rng.uniform(1e-9, 1e-6);
  c.evolve.dt = rng.uniform(1e-4, 1e-2);
  c.evolve.linear = rng.uniform() < 0.5;
  c.stability.deltas = {rng.uniform(), rng.uniform(), 1.0 / 3.0};
  c.check.seed = static_cast<std::uint64_t>(rng.integer(0, 1 << 30)) << 20;
  c.kelvin.tail_coefficient = rng.uniform(-2, 2);
  c.output_dir = "dir" + std::to_string(rng.integer(0, 99));
  return c;
}

}  // namespace

TEST_CASE("floats print with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  const double x = 2.0 / 7.0;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("json dump sorts keys and nulls non-finite numbers") {
  json j = {{"b", 0.1}, {"a", std::numeric_limits<double>::infinity()}, {"c", {1, 2}}};
  const std::string s = dump_json(j);
  CHECK(s.find("\"a\": null") != std::string::npos);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.back() == '\n');
}

TEST_CASE("csv preamble carries hash and version") {
  CsvWriter w("abc", {"x", "y"});
  w.row({1.0, 0.5});
  std::istringstream in(w.str());
  std::string l1, l2, l3, l4;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  std::getline(in, l4);
  CHECK(l1 == "# config_hash=abc");
  CHECK(l2 == std::string("# version=") + kVersion);
  CHECK(l3 == "x,y");
  CHECK(l4 == "1,0.5");
  CHECK_THROWS(w.row({1.0}));
}

TEST_CASE("config round-trips through its JSON form") {
  Rng rng(4);
  for (int s = 0; s < 50; ++s) {
    const RunConfig c = random_config(rng);
    const std::string text = dump_json(config_to_json(c));
    const RunConfig back = config_from_json(json::parse(text));
    CHECK(dump_json(config_to_json(back)) == text);
    CHECK(config_hash(back) == config_hash(c));
  }
}

TEST_CASE("config hash ignores the output directory only") {
  RunConfig a;
  RunConfig b = a;
  b.output_dir = "elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.check.seed = 43;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("malformed configs name the offending field") {
  auto field_of = [](const json& j) {
    try {
      validate_config(config_from_json(j));
    } catch (const ConfigError& e) {
      return e.field;
    }
    return std::string();
  };
  CHECK(field_of({{"params", {{"N", "three"}}}}) == "params.N");
  CHECK(field_of({{"grid", {{"nodes", 10}}}}) == "grid.nodes");
  CHECK(field_of({{"bogus", 1}}) == "bogus");
  CHECK(field_of({{"stability", {{"deltas", {0.1, "x"}}}}}) == "stability.deltas");
  CHECK(field_of({{"command", "stability"}, {"params", {{"q", 5.0}}}}) == "params.q");
  CHECK(field_of({{"command", "ground-state"}, {"grid", {{"grading", "cubic"}}}}) ==
        "grid.grading");
  CHECK(field_of({{"command", "check"}, {"check", {{"kind", "weight"}}}}) == "params.weight");
  CHECK(field_of({{"command", "fly"}}) == "command");
  CHECK(field_of(json::array()) == "<root>");
  CHECK(field_of(json::object()).empty());
}

TEST_CASE("run_command exit codes and error file") {
  RunConfig c;
  c.command = "stability";
  c.params.q = 5.0;
  c.output_dir = scratch("exit1").string();
  const CommandResult bad = run_command(c);
  CHECK(bad.exit_code == kConfigError);
  const json e = json::parse(slurp(fs::path(c.output_dir) / "error.json"));
  CHECK(e["error"]["field"] == "params.q");
  CHECK(e["config_hash"] == config_hash(c));
  CHECK(e["version"] == kVersion);

  RunConfig d;
  d.command = "ground-state";
  d.grid.n = 512;
  d.flow.max_iter = 2;
  d.output_dir = scratch("exit2").string();
  const CommandResult fail = run_command(d);
  CHECK(fail.exit_code == kNumericalError);
  const json f = json::parse(slurp(fs::path(d.output_dir) / "error.json"));
  CHECK(f["error"]["kind"] == "convergence");
  CHECK(f["error"]["iterations"] == 2);
}

TEST_CASE("ground-state command writes profile and summary") {
  RunConfig c;
  c.grid.n = 1024;
  c.output_dir = scratch("gs").string();
  const CommandResult r = run_command(c);
  REQUIRE(r.exit_code == kSuccess);
  const json s = json::parse(slurp(fs::path(c.output_dir) / "ground_state_summary.json"));
  CHECK(s["standing_wave"]["residual"].get<double>() < 1e-6);
  CHECK(s["standing_wave"]["J_monotone"] == true);
  CHECK(s["config_hash"] == config_hash(c));
  const std::string csv = slurp(fs::path(c.output_dir) / "ground_state_profile.csv");
  CHECK(csv.rfind("# config_hash=" + config_hash(c), 0) == 0);
  CHECK(csv.find("\nr,v,u\n") != std::string::npos);
}

TEST_CASE("check and evolve commands are byte-deterministic") {
  RunConfig c;
  c.command = "check";
  c.check.samples = 20;
  c.grid.n = 1024;
  c.output_dir = scratch("det_a").string();
  run_command(c);
  const std::string a = slurp(fs::path(c.output_dir) / "check_hardy.json");
  c.output_dir = scratch("det_b").string();
  run_command(c);
  CHECK(slurp(fs::path(c.output_dir) / "check_hardy.json") == a);

  RunConfig e;
  e.command = "evolve";
  e.evolve.linear = true;
  e.evolve.steps = 100;
  e.evolve.dt = 1e-2;
  e.grid.n = 1024;
  e.output_dir = scratch("ev").string();
  REQUIRE(run_command(e).exit_code == kSuccess);
  const json s = json::parse(slurp(fs::path(e.output_dir) / "evolution_summary.json"));
  CHECK(s["final_error_sup"].get<double>() < 1e-3);
  CHECK(s["final_time"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("stability command keeps the unperturbed wave on its orbit") {
  RunConfig c;
  c.command = "stability";
  c.grid.n = 1024;
  c.stability.deltas = {0.0};
  c.stability.T = 1.0;
  c.stability.dt = 1e-2;
  c.output_dir = scratch("stab0").string();
  REQUIRE(run_command(c).exit_code == kSuccess);
  const json s = json::parse(slurp(fs::path(c.output_dir) / "stability_summary.json"));
  REQUIRE(s["runs"].size() == 1);
  CHECK(s["runs"][0]["max_distance"].get<double>() < 1e-6);
  CHECK(slurp(fs::path(c.output_dir) / "stability_series.csv").find("\ndelta,t,distance,") !=
        std::string::npos);
}
