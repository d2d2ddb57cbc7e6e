#include "hardynls/kelvin.hpp"

#include <algorithm>
#include <cmath>

#include "hardynls/errors.hpp"
#include "hardynls/params.hpp"
#include "hardynls/random_fields.hpp"

namespace hardynls {

DualField make_dual(const Field& w) { return DualField{w, w.grid()->reciprocal()}; }

Field kelvin_transform(const Field& f, int N) {
  const GridPtr image = f.grid()->reciprocal();
  const auto& r = f.grid()->nodes();
  const std::size_t n = r.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = n - 1 - j;
    out[j] = std::pow(r[i], N - 2.0) * f[i];
  }
  return Field(image, std::move(out));
}

Field kelvin_transform(const DualField& w, int N) {
  Field psi = kelvin_transform(w.w, N);
  if (w.source_grid && psi.grid() != w.source_grid) {
    if (!psi.grid()->same_nodes(*w.source_grid)) {
      throw ShapeError("dual field: source grid is not the reciprocal of w's grid");
    }
    return Field(w.source_grid, psi.values());
  }
  return psi;
}

DualField dual_of(const Field& psi, int N) {
  return DualField{kelvin_transform(psi, N), psi.grid()};
}

WNormReport w_norm(const DualField& dual, int N) {
  const Field& w = dual.w;
  const RadialGrid& g = *w.grid();
  const auto& r = g.nodes();
  WNormReport rep;
  for (double f : {1.0, 0.5, 0.25}) {
    auto it = std::upper_bound(r.begin(), r.end(), f * g.r_max() * (1 + 1e-13));
    rep.radii.push_back(*(it - 1));
  }
  // a grid too sparse near r_max for the ladder falls back to its last nodes
  if (!(rep.radii[0] > rep.radii[1] && rep.radii[1] > rep.radii[2])) {
    const std::size_t n = r.size();
    rep.radii = {r[n - 1], r[n - 2], r[n - 3]};
  }
  std::vector<double> x, y;
  for (double R : rep.radii) {
    const double I = hardy_functional_shell(w, N, g.r_min(), R);
    const double L = surface_term(w, N, R);
    rep.I_R.push_back(I);
    rep.Lambda_R.push_back(L);
    x.push_back(1.0 / R);
    y.push_back(I + L);
  }
  rep.hardy_limit = richardson_quadratic(x, y);
  rep.Lambda_inf = richardson_quadratic(x, rep.Lambda_R);
  const auto wt = g.weights(N - 5.0);
  double m = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) m += wt[i] * std::norm(w[i]);
  rep.weighted_mass = sphere_area(N) * m;
  rep.norm_sq = rep.hardy_limit + rep.weighted_mass;
  return rep;
}

double h_norm_sq_u(const Field& u, int N) {
  const RadialGrid& g = *u.grid();
  const auto wt = g.weights(N - 1.0);
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) m += wt[i] * std::norm(u[i]);
  return hardy_norm_limit(u, N).value + sphere_area(N) * m;
}

KelvinVerification verify_kelvin(const GridPtr& grid, int N, int samples, std::uint64_t seed,
                                 double tail_coefficient) {
  if (N < 3) throw ParameterError("N must be >= 3");
  if (samples < 1) throw ParameterError("samples must be >= 1");
  KelvinVerification out;
  out.samples = samples;
  out.tail_coefficient = tail_coefficient;
  const auto& r = grid->nodes();
  Rng rng(seed);
  out.nodes_exact = true;
  for (int k = 0; k < samples; ++k) {
    auto v = evaluate_bumps(*grid, draw_bumps(*grid, rng));
    const double c = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * std::exp(-r[i] * r[i]);
    const Field psi = to_u(Field(grid, v), N);
    const DualField dual = dual_of(psi, N);
    const Field back = kelvin_transform(dual.w, N);
    out.nodes_exact = out.nodes_exact && back.grid() == psi.grid();
    for (std::size_t i = 0; i < psi.size(); ++i) {
      const double scale = std::abs(psi[i]);
      if (scale > 0) {
        out.involution_error = std::max(out.involution_error, std::abs(back[i] - psi[i]) / scale);
      }
    }
    const double H = h_norm_sq_u(psi, N);
    const double W = w_norm(dual, N).norm_sq;
    out.max_equivalence_error = std::max(out.max_equivalence_error, std::abs(W - H) / H);
  }
  const double c = tail_coefficient;
  const Field psi = to_u(Field::from_function(grid, [c](double x) {
                           return std::complex<double>(c * std::exp(-0.25 * x * x));
                         }),
                         N);
  const WNormReport rep = w_norm(dual_of(psi, N), N);
  out.Lambda_inf = rep.Lambda_inf;
  out.Lambda_expected = 0.5 * N * (N - 2) * unit_ball_volume(N) * c * c;
  out.Lambda_rel_error = out.Lambda_expected != 0.0
                             ? std::abs(out.Lambda_inf - out.Lambda_expected) / out.Lambda_expected
                             : std::abs(out.Lambda_inf);
  out.psi_excess = hardy_functional_u(psi, N, grid->r_min()) - hardy_norm_limit(psi, N).value;
  out.w_excess = rep.I_R.front() - rep.hardy_limit;
  return out;
}

}  // namespace hardynls
