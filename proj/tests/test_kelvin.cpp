#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "hardynls/errors.hpp"
#include "hardynls/functionals.hpp"
#include "hardynls/kelvin.hpp"
#include "oracles.hpp"

using namespace hardynls;

TEST_CASE("Kelvin transform is a node-exact involution") {
  Rng rng(8);
  for (Grading gr : {Grading::Log, Grading::Uniform}) {
    const GridPtr g = build_grid(1024, 1e-3, 30.0, gr);
    for (int N : {3, 4, 6}) {
      for (int s = 0; s < 10; ++s) {
        const Field psi = gen::complex_field(g, rng);
        const Field w = kelvin_transform(psi, N);
        CHECK(w.grid()->same_nodes(*g->reciprocal()));
        const Field back = kelvin_transform(w, N);
        CHECK(back.grid() == g);
        for (std::size_t i = 0; i < psi.size(); ++i) {
          CHECK(std::abs(back[i] - psi[i]) <= 1e-15 * std::abs(psi[i]) + 1e-300);
        }
      }
    }
  }
}

TEST_CASE("dual field tracks its source grid") {
  const GridPtr g = build_grid(256, 1e-3, 10.0);
  const Field psi = Field::from_function(g, [](double r) { return std::exp(-r); });
  const DualField d = dual_of(psi, 3);
  CHECK(d.source_grid == g);
  CHECK(kelvin_transform(d, 3).grid() == g);
  DualField wrong{d.w, build_grid(256, 1e-3, 11.0)};
  CHECK_THROWS_AS(kelvin_transform(wrong, 3), ShapeError);
}

TEST_CASE("W-norm of the dual equals the H-norm of the source") {
  const GridPtr g = build_grid(4096, 1e-4, 50.0);
  for (int N : {3, 4}) {
    const KelvinVerification v = verify_kelvin(g, N, 10, 123, 0.7);
    CHECK(v.nodes_exact);
    CHECK(v.involution_error < 1e-14);
    CHECK(v.max_equivalence_error < 1e-6);
    CHECK(v.Lambda_expected ==
          doctest::Approx(0.5 * N * (N - 2) * oracle::ball_volume(N) * 0.49).epsilon(1e-14));
    CHECK(v.Lambda_rel_error < 1e-2);
    CHECK(v.psi_excess > 0.0);
    CHECK(v.w_excess < 0.0);
  }
  CHECK_THROWS_AS(verify_kelvin(g, 2, 1, 1, 0.7), ParameterError);
}

TEST_CASE("weighted mass of the dual reproduces the plain mass of the source") {
  const GridPtr g = build_grid(8192, 1e-4, 50.0);
  const int N = 3;
  const Field psi = to_u(Field::from_function(g, [](double r) { return std::exp(-r * r); }), N);
  const WNormReport rep = w_norm(dual_of(psi, N), N);
  const double ref = oracle::sphere_area(N) *
                     oracle::integrate_to_inf([](double r) { return std::exp(-2 * r * r) * r; }, 0);
  CHECK(rep.weighted_mass == doctest::Approx(ref).epsilon(1e-5));
  CHECK(rep.radii.size() == 3);
  CHECK(rep.radii[0] > rep.radii[1]);
}
