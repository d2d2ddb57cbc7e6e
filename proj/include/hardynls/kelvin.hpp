#pragma once

#include <cstdint>
#include <vector>

#include "hardynls/functionals.hpp"
#include "hardynls/radial_grid.hpp"

namespace hardynls {

/// w on its own grid together with the grid of the psi side, which is the
/// reciprocal image of w's grid.
struct DualField {
  Field w;
  GridPtr source_grid;
};

DualField make_dual(const Field& w);

/// Radial Kelvin transform f -> |y|^{2-N} f(y / |y|^2): the value at node
/// 1/r_i of the reciprocal grid is r_i^{N-2} f(r_i). It is its own inverse.
Field kelvin_transform(const Field& f, int N);
/// psi with psi(1/r) = r^{N-2} w(r), on the source grid.
Field kelvin_transform(const DualField& w, int N);
/// The dual field whose transform is psi.
DualField dual_of(const Field& psi, int N);

struct WNormReport {
  double norm_sq = 0.0;        // lim (I_R + Lambda_R) + int |x|^{-4} |w|^2
  double hardy_limit = 0.0;    // lim_{R -> inf} (I_R + Lambda_R)
  double weighted_mass = 0.0;  // int |x|^{-4} |w|^2 dx
  std::vector<double> radii;     // three largest radii R, decreasing
  std::vector<double> I_R;       // Hardy functional on the ball B_R
  std::vector<double> Lambda_R;  // (N-2)/2 R^{-1} int_{|x|=R} |w|^2 dS
  double Lambda_inf = 0.0;       // extrapolated lim Lambda_R
};

/// W-norm with the limit in R taken by quadratic extrapolation in 1/R^2 over
/// the nodes nearest r_max, r_max / 2, r_max / 4.
WNormReport w_norm(const DualField& w, int N);

/// Squared H norm of u on the psi side: lim (I_eps - Lambda_eps) + int |u|^2 dx.
double h_norm_sq_u(const Field& u, int N);

struct KelvinVerification {
  bool nodes_exact = false;        // transform twice lands on the original grid object
  double involution_error = 0.0;   // max relative deviation after two transforms
  int samples = 0;
  double max_equivalence_error = 0.0;  // max |W-norm^2 - H-norm^2| / H-norm^2
  double tail_coefficient = 0.0;       // c in v = c e^{-r^2 / 4}
  double Lambda_inf = 0.0;
  double Lambda_expected = 0.0;        // N(N-2)/2 omega_N c^2
  double Lambda_rel_error = 0.0;
  double psi_excess = 0.0;  // I_eps(psi) - lim (I_eps - Lambda_eps), positive
  double w_excess = 0.0;    // I_R(w) - lim (I_R + Lambda_R), negative
};

/// Involution, norm equivalence over random fields psi = T(v) (signed bumps
/// plus c e^{-r^2}, so psi keeps the origin singularity) and the tail term
/// for v = c e^{-r^2/4} with c = tail_coefficient.
KelvinVerification verify_kelvin(const GridPtr& grid, int N, int samples, std::uint64_t seed,
                                 double tail_coefficient);

}  // namespace hardynls
