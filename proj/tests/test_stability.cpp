#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "hardynls/errors.hpp"
#include "hardynls/functionals.hpp"
#include "hardynls/ground_state.hpp"
#include "hardynls/stability.hpp"

using namespace hardynls;

namespace {

const StandingWave& wave() {
  static const StandingWave sw = [] {
    Params p;
    const GridPtr g = build_grid(1024, 1e-4, 50.0);
    return normalized_gradient_flow(p, g, gaussian_init(g, p));
  }();
  return sw;
}

Field rotate(const Field& v, double theta) {
  std::vector<std::complex<double>> out(v.values());
  for (auto& z : out) z *= std::polar(1.0, theta);
  return Field(v.grid(), out);
}

}  // namespace

TEST_CASE("orbit distance vanishes on the orbit and ignores global phase") {
  const StandingWave& sw = wave();
  Rng rng(17);
  for (int s = 0; s < 20; ++s) {
    const double theta = rng.uniform(-3.0, 3.0);
    CHECK(orbit_distance(rotate(sw.v, theta), sw, 3) < 1e-12);
    const Field w = gen::complex_field(sw.v.grid(), rng);
    CHECK(orbit_distance(rotate(w, theta), sw, 3) ==
          doctest::Approx(orbit_distance(w, sw, 3)).epsilon(1e-10));
    CHECK(orbit_distance(w, sw, 3) <= h_norm(w, 3) + h_norm(sw.v, 3));
  }
}

TEST_CASE("each perturbation family lands at distance delta with the right mass") {
  const StandingWave& sw = wave();
  Params p;
  for (Perturbation k : {Perturbation::RadialBump, Perturbation::PhaseRamp, Perturbation::Dilation}) {
    for (double delta : {1e-3, 1e-2}) {
      const Field v = perturb(sw, p, delta, k);
      CHECK(orbit_distance(v, sw, 3) == doctest::Approx(delta).epsilon(1e-6));
      CHECK(mass_mu(v, 3) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(parse_perturbation(perturbation_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_perturbation("shear"), ParameterError);
}

TEST_CASE("short stability run stays near the orbit") {
  const StandingWave& sw = wave();
  Params p;
  const StabilityRun zero = stability_experiment(p, sw, 0.0, Perturbation::RadialBump, 2.0, 2e-2);
  CHECK(zero.max_distance < 1e-6);
  CHECK(zero.ratio() == 0.0);
  const StabilityRun run = stability_experiment(p, sw, 1e-2, Perturbation::PhaseRamp, 2.0, 2e-2);
  CHECK(run.initial_distance == doctest::Approx(1e-2).epsilon(1e-6));
  CHECK(run.max_distance < 10 * 1e-2);
  CHECK(run.times.size() == run.distances.size());
  CHECK(run.times.size() == 101);
  for (double d : run.charge_drift) CHECK(std::abs(d) < 1e-10);
  CHECK_THROWS_AS(stability_experiment(p, sw, 1e-2, Perturbation::PhaseRamp, 1.0, 0.5),
                  ParameterError);
}
