#pragma once

#include <cstdint>
#include <vector>

#include "hardynls/functionals.hpp"
#include "hardynls/params.hpp"
#include "hardynls/radial_grid.hpp"

namespace hardynls {

struct StandingWave {
  Field v;                // real, nonnegative, v = 0 at r_max
  double lambda = 0.0;    // multiplier in -div(|x|^{-(N-2)} grad v) + lambda ... = 0
  double gamma = 0.0;
  EnergyReport energies;
  double v0 = 0.0;             // v extrapolated to the origin
  double exponent = 0.0;       // fitted log-log slope of u near the origin
  double Lambda_origin = 0.0;  // N(N-2)/2 omega_N v0^2
  double residual = 0.0;
  int iterations = 0;
  double final_dt = 0.0;
  std::vector<double> J_history;  // J after each accepted step, J_history[0] = J(init)
};

struct FlowOptions {
  double tol = 1e-7;
  int max_iter = 200000;
  double dt0 = 0.1;
  double dt_min = 1e-6;
  double dt_max = 50.0;
  double dt_growth = 1.25;
  double energy_slack = 1e-12;  // accepted steps satisfy J_new <= J_old + slack
  int stall_window = 10;
  double stall_tol = 1e-12;
  // give up once J is stalled and the residual has not dropped 1% for this
  // many steps
  int stagnation_window = 2000;
  bool keep_history = true;
};

/// Projected gradient flow for min J on the mass sphere, renormalized to
/// gamma after every step. Each step solves
///   (W + dt K + dt lambda_+ W) v* = W (v + dt (kappa |v|^{q-2} v + lambda_- v))
/// with lambda = lagrange_multiplier(v), lambda_+ = max(lambda, 0),
/// lambda_- = max(-lambda, 0), and rescales v* to mass gamma. Steps raising J
/// by more than energy_slack are retried with dt / 2. Stops once the elliptic
/// residual is below tol and J moved less than stall_tol over the last
/// stall_window steps.
///
/// Throws ParameterError outside 2 < q <= 2 + 4/N, DegenerateInputError for a
/// zero-mass init, ConvergenceError when max_iter or dt_min is hit.
StandingWave normalized_gradient_flow(const Params& params, const GridPtr& grid,
                                      const Field& init, const FlowOptions& opt = {});

/// mu-L^2 norm of the discrete residual A v + lambda v - kappa |v|^{q-2} v,
/// A = W^{-1} K, over every node except the pinned one at r_max.
double elliptic_residual(const Field& v, double lambda, const Params& params);
double elliptic_residual(const Discretization& d, const std::vector<double>& v,
                         double lambda);

/// Multiplier minimizing the residual norm over lambda for a fixed v.
double residual_fit_multiplier(const Field& v, const Params& params);

struct OriginFit {
  double exponent = 0.0;
  double v0 = 0.0;
};

/// exponent: least-squares slope of log |u| against log r on
/// [10 r_min, 1e3 r_min]. v0: linear fit of v against the log-time coordinate
/// over the three nodes nearest the origin, evaluated at t = 0.
OriginFit origin_behavior(const Field& v, int N);
OriginFit origin_behavior(const StandingWave& sw, int N);

/// Gamma-normalized Gaussian e^{-r^2/2}, zero at r_max.
Field gaussian_init(const GridPtr& grid, const Params& params, double width = 1.0);
/// Gamma-normalized e^{-r}, zero at r_max.
Field exponential_init(const GridPtr& grid, const Params& params, double scale = 1.0);

/// Independent check of the flow: best-of-restarts projected descent from
/// random positive fields, using H-preconditioned gradients, Barzilai-Borwein
/// trial steps and Armijo backtracking. budget is the iteration cap per
/// restart; budget = 0 returns the best initial sample.
StandingWave oracle_minimize(const Params& params, const GridPtr& grid, int restarts,
                             int budget, std::uint64_t seed = 1);

}  // namespace hardynls
