#pragma once

#include <complex>
#include <vector>

#include "hardynls/params.hpp"
#include "hardynls/radial_grid.hpp"

namespace hardynls {

struct EnergyReport {
  double dirichlet_mu = 0.0;  // int |x|^{-(N-2)} |grad v|^2 dx
  double mass_mu = 0.0;       // int |x|^{-(N-2)} |v|^2 dx
  double nonlinear = 0.0;     // (1/q) int |x|^{-q(N-2)/2} g |v|^q dx
  double E = 0.0;
  double J = 0.0;
  double h_norm_sq = 0.0;
};

/// Quadrature data shared by every v-form functional on one grid.
///
/// The Dirichlet form is sum_e c_e |v_{e+1} - v_e|^2 and the mass is
/// sum_i w_i |v_i|^2, both times the sphere area; kappa holds the singular
/// nonlinear weight r^{-(q-2)(N-2)/2} g(r) at the nodes.
struct Discretization {
  Discretization(GridPtr grid, const Params& params);

  GridPtr grid;
  Params params;
  double area;
  std::vector<double> w;
  std::vector<double> c;
  std::vector<double> kappa;

  std::size_t size() const { return w.size(); }

  double dirichlet(const std::vector<std::complex<double>>& v) const;
  double dirichlet(const std::vector<double>& v) const;
  double mass(const std::vector<std::complex<double>>& v) const;
  double mass(const std::vector<double>& v) const;
  /// (1/q) sum_i w_i kappa_i |v_i|^q, times the sphere area.
  double nonlinear(const std::vector<std::complex<double>>& v) const;
  double nonlinear(const std::vector<double>& v) const;

  /// (K v)_i with K the stiffness matrix of the Dirichlet form.
  std::vector<double> stiffness_apply(const std::vector<double>& v) const;
};

double weighted_dirichlet(const Field& v, int N);
double mass_mu(const Field& v, int N);

/// Complex H inner product <a, b> = Dirichlet(a, b) + mass(a, b), conjugate
/// linear in b.
std::complex<double> h_inner(const Field& a, const Field& b, int N);

/// Hardy functional of u on the exterior of the ball of radius eps, with the
/// full radial measure r^{N-1} dr. eps is rounded up to the next node.
double hardy_functional_u(const Field& u, int N, double eps);

/// Hardy functional of u on the shell r_lo <= r <= r_hi, both rounded inward
/// to nodes.
double hardy_functional_shell(const Field& u, int N, double r_lo, double r_hi);

/// (N-2)/2 * N omega_N * eps^{N-2} |u(eps)|^2 with u linearly interpolated.
double surface_term(const Field& u, int N, double eps);

/// Value of an eps -> 0 limit estimated from samples at the three smallest
/// nodes by a quadratic fit in eps^2.
struct LimitEstimate {
  double value = 0.0;
  std::vector<double> eps;
  std::vector<double> samples;
};

LimitEstimate surface_term_limit(const Field& u, int N);
/// lim (I_eps(u) - Lambda_eps(u)), the Dirichlet part of the H norm of u.
LimitEstimate hardy_norm_limit(const Field& u, int N);

/// Quadratic extrapolation in x^2 to x = 0 through three samples.
double richardson_quadratic(const std::vector<double>& x, const std::vector<double>& y);

double nonlinear_term(const Field& v, const Params& params);
EnergyReport energy_J(const Field& v, const Params& params);
EnergyReport energy_report(const Discretization& d, const std::vector<double>& v);
EnergyReport energy_report(const Discretization& d,
                           const std::vector<std::complex<double>>& v);

/// (q F - D) / M. Throws DegenerateInputError on zero mass.
double lagrange_multiplier(const Field& v, const Params& params);

}  // namespace hardynls
