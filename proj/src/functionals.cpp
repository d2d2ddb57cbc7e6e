#include "hardynls/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "hardynls/errors.hpp"

namespace hardynls {

Discretization::Discretization(GridPtr g, const Params& p)
    : grid(std::move(g)), params(p), area(sphere_area(p.N)) {
  params.validate(QRange::Inequality);
  w = grid->weights();
  c = grid->edge_weights();
  const double s = -(params.q - 2.0) * params.hardy_exponent();
  const auto& r = grid->nodes();
  kappa.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    kappa[i] = std::pow(r[i], s) * params.g(r[i]);
  }
}

namespace {

template <class T>
double dirichlet_sum(const std::vector<double>& c, const std::vector<T>& v) {
  double s = 0.0;
  for (std::size_t e = 0; e < c.size(); ++e) s += c[e] * std::norm(v[e + 1] - v[e]);
  return s;
}

template <class T>
double mass_sum(const std::vector<double>& w, const std::vector<T>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::norm(v[i]);
  return s;
}

template <class T>
double nonlinear_sum(const std::vector<double>& w, const std::vector<double>& kappa,
                     const std::vector<T>& v, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (kappa[i] == 0.0) continue;
    s += w[i] * kappa[i] * std::pow(std::abs(v[i]), q);
  }
  return s / q;
}

template <class T>
void check_len(const Discretization& d, const std::vector<T>& v) {
  if (v.size() != d.size()) throw ShapeError("vector length does not match the grid");
}

}  // namespace

double Discretization::dirichlet(const std::vector<std::complex<double>>& v) const {
  check_len(*this, v);
  return area * dirichlet_sum(c, v);
}
double Discretization::dirichlet(const std::vector<double>& v) const {
  check_len(*this, v);
  return area * dirichlet_sum(c, v);
}
double Discretization::mass(const std::vector<std::complex<double>>& v) const {
  check_len(*this, v);
  return area * mass_sum(w, v);
}
double Discretization::mass(const std::vector<double>& v) const {
  check_len(*this, v);
  return area * mass_sum(w, v);
}
double Discretization::nonlinear(const std::vector<std::complex<double>>& v) const {
  check_len(*this, v);
  return area * nonlinear_sum(w, kappa, v, params.q);
}
double Discretization::nonlinear(const std::vector<double>& v) const {
  check_len(*this, v);
  return area * nonlinear_sum(w, kappa, v, params.q);
}

std::vector<double> Discretization::stiffness_apply(const std::vector<double>& v) const {
  check_len(*this, v);
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t e = 0; e < c.size(); ++e) {
    const double f = c[e] * (v[e + 1] - v[e]);
    out[e] -= f;
    out[e + 1] += f;
  }
  return out;
}

double weighted_dirichlet(const Field& v, int N) {
  return sphere_area(N) * dirichlet_sum(v.grid()->edge_weights(), v.values());
}

double mass_mu(const Field& v, int N) {
  return sphere_area(N) * mass_sum(v.grid()->weights(), v.values());
}

std::complex<double> h_inner(const Field& a, const Field& b, int N) {
  require_same_grid(a, b);
  const auto& c = a.grid()->edge_weights();
  const auto& w = a.grid()->weights();
  std::complex<double> s = 0.0;
  for (std::size_t e = 0; e < c.size(); ++e) {
    s += c[e] * (a[e + 1] - a[e]) * std::conj(b[e + 1] - b[e]);
  }
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * std::conj(b[i]);
  return sphere_area(N) * s;
}

namespace {

std::size_t first_node_at_or_above(const RadialGrid& g, double eps) {
  const auto& r = g.nodes();
  const double target = eps * (1.0 - 1e-13);
  auto it = std::lower_bound(r.begin(), r.end(), target);
  return static_cast<std::size_t>(it - r.begin());
}

void check_eps(const RadialGrid& g, double eps) {
  if (!(eps >= g.r_min() * (1.0 - 1e-13))) {
    throw DomainError("eps below r_min");
  }
  if (!(eps <= g.r_max())) throw DomainError("eps above r_max");
}

}  // namespace

namespace {

double hardy_on_nodes(const Field& u, int N, std::size_t k0, std::size_t k1) {
  if (k1 <= k0) return 0.0;
  const RadialGrid& g = *u.grid();
  const auto c = g.edge_weights(N - 1.0);
  auto w = g.weights(N - 3.0);
  // trapezoid on [r_k0, r_k1]: halve both ends of the sub-range
  if (k0 > 0) w[k0] *= 0.5;
  if (k1 + 1 < g.size()) w[k1] *= 0.5;
  const double a = 0.5 * (N - 2);
  double grad = 0.0;
  for (std::size_t e = k0; e < k1; ++e) grad += c[e] * std::norm(u[e + 1] - u[e]);
  double pot = 0.0;
  for (std::size_t i = k0; i <= k1; ++i) pot += w[i] * std::norm(u[i]);
  return sphere_area(N) * (grad - a * a * pot);
}

std::size_t last_node_at_or_below(const RadialGrid& g, double r) {
  const auto& x = g.nodes();
  auto it = std::upper_bound(x.begin(), x.end(), r * (1.0 + 1e-13));
  if (it == x.begin()) throw DomainError("radius below the grid");
  return static_cast<std::size_t>(it - x.begin()) - 1;
}

}  // namespace

double hardy_functional_u(const Field& u, int N, double eps) {
  const RadialGrid& g = *u.grid();
  check_eps(g, eps);
  const std::size_t k = first_node_at_or_above(g, eps);
  return hardy_on_nodes(u, N, k, g.size() - 1);
}

double hardy_functional_shell(const Field& u, int N, double r_lo, double r_hi) {
  const RadialGrid& g = *u.grid();
  check_eps(g, r_lo);
  if (!(r_hi >= r_lo) || !(r_hi <= g.r_max() * (1 + 1e-13))) {
    throw DomainError("shell radii outside the grid");
  }
  return hardy_on_nodes(u, N, first_node_at_or_above(g, r_lo), last_node_at_or_below(g, r_hi));
}

double surface_term(const Field& u, int N, double eps) {
  const RadialGrid& g = *u.grid();
  if (!(eps >= g.r_min()) || !(eps <= g.r_max())) {
    throw DomainError("surface term radius outside the grid");
  }
  std::vector<double> re(u.size()), im(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    re[i] = u[i].real();
    im[i] = u[i].imag();
  }
  const double ur = g.interpolate(re, eps);
  const double ui = g.interpolate(im, eps);
  return 0.5 * (N - 2) * sphere_area(N) * std::pow(eps, N - 2.0) * (ur * ur + ui * ui);
}

double richardson_quadratic(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != 3 || y.size() != 3) throw ShapeError("richardson needs 3 samples");
  const double t0 = x[0] * x[0], t1 = x[1] * x[1], t2 = x[2] * x[2];
  const double l0 = t1 * t2 / ((t0 - t1) * (t0 - t2));
  const double l1 = t0 * t2 / ((t1 - t0) * (t1 - t2));
  const double l2 = t0 * t1 / ((t2 - t0) * (t2 - t1));
  return l0 * y[0] + l1 * y[1] + l2 * y[2];
}

namespace {

// Nodes nearest above r_min, 2 r_min, 4 r_min; the first three nodes when
// the grid is too sparse near the origin for that ladder.
std::vector<double> small_eps_nodes(const RadialGrid& g) {
  std::vector<double> eps;
  for (double f : {1.0, 2.0, 4.0}) {
    const std::size_t k = first_node_at_or_above(g, f * g.r_min());
    if (k >= g.size()) throw DomainError("grid too short for the eps ladder");
    eps.push_back(g.nodes()[k]);
  }
  if (!(eps[0] < eps[1] && eps[1] < eps[2])) {
    eps = {g.nodes()[0], g.nodes()[1], g.nodes()[2]};
  }
  return eps;
}

}  // namespace

LimitEstimate surface_term_limit(const Field& u, int N) {
  LimitEstimate out;
  out.eps = small_eps_nodes(*u.grid());
  for (double e : out.eps) out.samples.push_back(surface_term(u, N, e));
  out.value = richardson_quadratic(out.eps, out.samples);
  return out;
}

LimitEstimate hardy_norm_limit(const Field& u, int N) {
  LimitEstimate out;
  out.eps = small_eps_nodes(*u.grid());
  for (double e : out.eps) {
    out.samples.push_back(hardy_functional_u(u, N, e) - surface_term(u, N, e));
  }
  out.value = richardson_quadratic(out.eps, out.samples);
  return out;
}

double nonlinear_term(const Field& v, const Params& params) {
  return Discretization(v.grid(), params).nonlinear(v.values());
}

EnergyReport energy_report(const Discretization& d, const std::vector<double>& v) {
  EnergyReport r;
  r.dirichlet_mu = d.dirichlet(v);
  r.mass_mu = d.mass(v);
  r.nonlinear = d.nonlinear(v);
  r.E = 0.5 * r.dirichlet_mu - r.nonlinear;
  r.J = r.E + 0.5 * r.mass_mu;
  r.h_norm_sq = r.dirichlet_mu + r.mass_mu;
  return r;
}

EnergyReport energy_report(const Discretization& d,
                           const std::vector<std::complex<double>>& v) {
  EnergyReport r;
  r.dirichlet_mu = d.dirichlet(v);
  r.mass_mu = d.mass(v);
  r.nonlinear = d.nonlinear(v);
  r.E = 0.5 * r.dirichlet_mu - r.nonlinear;
  r.J = r.E + 0.5 * r.mass_mu;
  r.h_norm_sq = r.dirichlet_mu + r.mass_mu;
  return r;
}

EnergyReport energy_J(const Field& v, const Params& params) {
  return energy_report(Discretization(v.grid(), params), v.values());
}

double lagrange_multiplier(const Field& v, const Params& params) {
  const auto rep = energy_J(v, params);
  if (!(rep.mass_mu > 0.0)) {
    throw DegenerateInputError("lagrange multiplier of a zero-mass field");
  }
  return (params.q * rep.nonlinear - rep.dirichlet_mu) / rep.mass_mu;
}

}  // namespace hardynls
