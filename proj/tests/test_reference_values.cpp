#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "hardynls/evolution.hpp"
#include "hardynls/functionals.hpp"
#include "hardynls/ground_state.hpp"
#include "hardynls/kelvin.hpp"
#include "hardynls/stability.hpp"
#include "oracles.hpp"

using namespace hardynls;

namespace {

constexpr double kPi = std::numbers::pi;

double bump12(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  const double s = (r - 1.0) * (2.0 - r);
  return std::exp(-0.25 / s) * 50.0;
}

}  // namespace

TEST_CASE("grid echoes its construction and integrates simple profiles") {
  const GridPtr g = build_grid(10000, 1e-6, 50.0);
  CHECK(g->size() == 10000);
  CHECK(g->r_min() == doctest::Approx(1e-6).epsilon(1e-14));
  CHECK(g->r_max() == doctest::Approx(50.0).epsilon(1e-14));
  const auto& w = g->weights();
  const auto& r = g->nodes();
  double gauss = 0.0, zero = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) gauss += w[i] * std::exp(-r[i] * r[i]);
  CHECK(std::abs(gauss - 0.5) < 1e-6);
  CHECK(integrate_mu(std::vector<double>(r.size(), 0.0), *g, 3) == zero);
  // indicator of [0, 1]: first-order exact up to the cut cell
  const GridPtr u = build_grid(4096, 1e-3, 2.0, Grading::Uniform);
  double ind = 0.0;
  for (std::size_t i = 0; i < u->size(); ++i) ind += u->weights()[i] * (u->nodes()[i] <= 1.0);
  CHECK(std::abs(ind - 0.5) < 2.0 * u->h());
}

TEST_CASE("transform definitions") {
  const GridPtr g = build_grid(512, 1e-3, 20.0);
  const Field one = Field::from_function(g, [](double) { return 1.0; });
  const Field u3 = to_u(one, 3);
  const Field e = Field::from_function(g, [](double r) { return std::exp(-r); });
  const Field u4 = to_u(e, 4);
  for (std::size_t i = 0; i < g->size(); i += 37) {
    const double r = g->nodes()[i];
    CHECK(u3[i].real() == doctest::Approx(std::pow(r, -0.5)).epsilon(1e-15));
    CHECK(u4[i].real() == doctest::Approx(std::exp(-r) / r).epsilon(1e-15));
  }
  CHECK(log_time_coordinate(std::exp(-1.0), 3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log_time_coordinate(std::exp(-8.0), 4) == doctest::Approx(std::pow(8.0, -0.5)).epsilon(1e-15));
  double prev = 1.0;
  for (double r : {1e-2, 1e-4, 1e-8, 1e-16, 1e-64}) {
    const double t = log_time_coordinate(r, 3);
    CHECK(t > 0.0);
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("mu-integral of a compact bump against a refined reference") {
  const GridPtr g = build_grid();
  const Field v = Field::from_function(g, bump12);
  const double ref = oracle::mu_integral([](double r) { return bump12(r) * bump12(r); }, 3, 1.0, 2.0);
  CHECK(integrate_mu(v.abs_sq(), *g, 3) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("gaussian energies at N=3, q=3") {
  const GridPtr g = build_grid();
  const Field v = Field::from_function(g, [](double r) { return std::exp(-0.5 * r * r); });
  CHECK(weighted_dirichlet(v, 3) == doctest::Approx(2 * kPi).epsilon(1e-6));
  Params p;
  const double F = (4 * kPi / 3) * oracle::integrate_to_inf(
                                        [](double r) { return std::sqrt(r) * std::exp(-1.5 * r * r); }, 0);
  CHECK(nonlinear_term(v, p) == doctest::Approx(F).epsilon(1e-6));
  const EnergyReport e = energy_J(v, p);
  CHECK(e.E == doctest::Approx(kPi - F).epsilon(1e-6));
  CHECK(e.J == doctest::Approx(e.E + kPi).epsilon(1e-6));
  CHECK(e.J - e.E - 0.5 * e.mass_mu == 0.0);
  const EnergyReport z = energy_J(Field::zeros(g), p);
  CHECK(z.E == 0.0);
  CHECK(z.J == 0.0);
  CHECK(weighted_dirichlet(Field::zeros(g), 3) == 0.0);
}

TEST_CASE("Hardy functional limits") {
  const GridPtr g = build_grid();
  const Field gauss = Field::from_function(g, [](double r) { return std::exp(-0.5 * r * r); });
  CHECK(hardy_norm_limit(to_u(gauss, 3), 3).value == doctest::Approx(2 * kPi).epsilon(1e-6));
  CHECK(hardy_functional_u(Field::zeros(g), 3, 1e-3) == 0.0);
  CHECK(surface_term_limit(Field::zeros(g), 3).value == 0.0);
  const Field b = Field::from_function(g, bump12);
  for (double eps : {1e-3, 0.1, 0.9}) {
    CHECK(hardy_functional_u(to_u(b, 3), 3, eps) ==
          doctest::Approx(weighted_dirichlet(b, 3)).epsilon(1e-6));
  }
  // u = r^{-1/2} e^{-r}: v(0) = 1, limit 3 (1/2) (4 pi / 3) = 2 pi
  const Field e = Field::from_function(g, [](double r) { return std::exp(-r); });
  CHECK(surface_term_limit(to_u(e, 3), 3).value == doctest::Approx(2 * kPi).epsilon(1e-3));
  for (int N : {3, 4, 6}) {
    const double c = 0.37;
    const Field v = Field::from_function(g, [c](double r) { return c * std::exp(-r * r); });
    CHECK(surface_term_limit(to_u(v, N), N).value ==
          doctest::Approx(0.5 * N * (N - 2) * oracle::ball_volume(N) * c * c).epsilon(1e-6));
  }
}

TEST_CASE("multiplier signs and homogeneity") {
  const GridPtr g = build_grid(1024, 1e-4, 30.0);
  Params p;
  WeightSpec off = WeightSpec::power_law(0.0, 0.0);
  for (double& x : off.values) x = 0.0;
  Params silent = p;
  silent.weight = off;
  const Field v = Field::from_function(g, [](double r) { return std::exp(-r * r); });
  const EnergyReport e = energy_J(v, silent);
  CHECK(e.nonlinear == 0.0);
  CHECK(lagrange_multiplier(v, silent) == doctest::Approx(-e.dirichlet_mu / e.mass_mu));
  CHECK(lagrange_multiplier(v, silent) <= 0.0);
  const double c = 1.7;
  const Field cv = Field::from_function(g, [c](double r) { return c * std::exp(-r * r); });
  const EnergyReport base = energy_J(v, p);
  CHECK(lagrange_multiplier(cv, p) ==
        doctest::Approx((c * p.q * base.nonlinear - base.dirichlet_mu) / base.mass_mu).epsilon(1e-12));
}

TEST_CASE("residual of non-solutions and the zero field") {
  const GridPtr g = build_grid(1024, 1e-4, 50.0);
  Params p;
  CHECK(elliptic_residual(Field::zeros(g), 0.3, p) == 0.0);
  const Field gauss = gaussian_init(g, p);
  CHECK(elliptic_residual(gauss, lagrange_multiplier(gauss, p), p) > 1e-3);
}

TEST_CASE("restart consistency between initial data") {
  Params p;
  const GridPtr g = build_grid();
  const StandingWave a = normalized_gradient_flow(p, g, gaussian_init(g, p));
  const StandingWave b = normalized_gradient_flow(p, g, exponential_init(g, p));
  CHECK(std::abs(a.energies.J - b.energies.J) < 1e-5);
  std::vector<double> d(g->size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.v[i].real() - b.v[i].real();
  CHECK(h_norm(Field(g, d), 3) < 1e-4);
}

TEST_CASE("origin fit on exact power laws") {
  // the fit window scales with r_min; these profiles are exact only as r_min -> 0
  const GridPtr g = build_grid(8192, 1e-6, 50.0);
  const Field v3 = to_v(Field::from_function(g, [](double r) { return std::pow(r, -0.5) * (1 + r); }), 3);
  const OriginFit f3 = origin_behavior(v3, 3);
  CHECK(std::abs(f3.exponent + 0.5) < 1e-3);
  CHECK(std::abs(f3.v0 - 1.0) < 1e-3);
  const Field v4 = to_v(Field::from_function(g, [](double r) { return std::exp(-r * r) / r; }), 4);
  CHECK(std::abs(origin_behavior(v4, 4).exponent + 1.0) < 1e-3);
}

TEST_CASE("minimizer oracle: zero budget and determinism") {
  Params p;
  const GridPtr g = build_grid(256, 1e-4, 50.0);
  const StandingWave idle = oracle_minimize(p, g, 3, 0, 9);
  const StandingWave flow = normalized_gradient_flow(p, g, gaussian_init(g, p));
  CHECK(idle.iterations == 0);
  CHECK(idle.energies.J >= flow.energies.J);
  CHECK(idle.energies.mass_mu == doctest::Approx(1.0).epsilon(1e-12));
  const StandingWave a = oracle_minimize(p, g, 1, 200, 5);
  const StandingWave b = oracle_minimize(p, g, 1, 200, 5);
  CHECK(a.energies.J == b.energies.J);
  CHECK(a.v.values() == b.v.values());
}

TEST_CASE("fresh evolution state matches its baselines") {
  const GridPtr g = build_grid(512, 1e-3, 20.0);
  Params p;
  const EvolutionState s = make_state(Field::from_function(g, [](double r) { return std::exp(-r * r); }), p);
  const auto [c, e] = invariants(s, p);
  CHECK(c == s.charge0);
  CHECK(e == s.energy0);
}

TEST_CASE("orbit distance geometry") {
  Params p;
  const GridPtr g = build_grid(1024, 1e-4, 50.0);
  const StandingWave sw = normalized_gradient_flow(p, g, gaussian_init(g, p));
  const int N = 3;
  const double nv = h_norm(sw.v, N);
  std::vector<std::complex<double>> scaled(sw.v.values());
  for (auto& z : scaled) z *= 1.01;
  CHECK(orbit_distance(Field(g, scaled), sw, N) == doctest::Approx(0.01 * nv).epsilon(1e-10));
  // w H-orthogonal to v and i v: subtract the projection of a bump onto v
  Rng rng(21);
  Field w = gen::field(g, rng);
  const double proj = h_inner(w, sw.v, N).real() / (nv * nv);
  std::vector<std::complex<double>> wo(w.values()), sum(w.size());
  for (std::size_t i = 0; i < wo.size(); ++i) {
    wo[i] -= proj * sw.v[i];
    sum[i] = sw.v[i] + 0.1 * wo[i];
  }
  const double expected = 0.1 * h_norm(Field(g, wo), N);
  CHECK(orbit_distance(Field(g, sum), sw, N) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("stability distance scales at most linearly in delta") {
  Params p;
  const GridPtr g = build_grid(1024, 1e-4, 50.0);
  const StandingWave sw = normalized_gradient_flow(p, g, gaussian_init(g, p));
  const StabilityRun small = stability_experiment(p, sw, 1e-3, Perturbation::RadialBump, 2.0, 2e-2);
  const StabilityRun large = stability_experiment(p, sw, 1e-2, Perturbation::RadialBump, 2.0, 2e-2);
  const double growth = large.max_distance / small.max_distance;
  CHECK(growth <= 3.0 * 10.0);
  CHECK(growth >= 10.0 / 3.0);
}

TEST_CASE("Kelvin transform of the fundamental solution is constant") {
  const GridPtr g = build_grid(1024, 1e-3, 30.0);
  for (int N : {3, 5}) {
    const Field w = Field::from_function(g, [N](double r) { return std::pow(r, -(N - 2.0)); });
    const Field psi = kelvin_transform(w, N);
    for (std::size_t i = 0; i < psi.size(); ++i) CHECK(psi[i].real() == doctest::Approx(1.0).epsilon(1e-13));
    const double a = 0.5 * (N - 2);
    const Field tail = Field::from_function(g, [a](double r) { return 0.3 * std::pow(r, -a); });
    const Field swapped = kelvin_transform(tail, N);
    const auto& rho = swapped.grid()->nodes();
    for (std::size_t i = 0; i < rho.size(); i += 101) {
      CHECK(swapped[i].real() == doctest::Approx(0.3 * std::pow(rho[i], -a)).epsilon(1e-12));
    }
    CHECK(w_norm(make_dual(Field::zeros(g)), N).norm_sq == 0.0);
  }
}
