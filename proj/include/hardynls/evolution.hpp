#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hardynls/functionals.hpp"
#include "hardynls/params.hpp"
#include "hardynls/radial_grid.hpp"
#include "hardynls/tridiagonal.hpp"

namespace hardynls {

enum class Scheme { CrankNicolson, StrangSplitting };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct EvolutionOptions {
  Scheme scheme = Scheme::CrankNicolson;
  bool nonlinear = true;  // false drops the |v|^{q-2} v term entirely
  int max_fixed_point = 50;
  double fixed_point_tol = 1e-12;  // sup-norm update, relative to sup |v|
};

struct EvolutionState {
  Field v;
  double time = 0.0;
  double charge0 = 0.0;
  double energy0 = 0.0;
};

/// Fresh state at t = 0 with its own charge and energy baselines. The value at
/// r_max is forced to zero.
EvolutionState make_state(const Field& v, const Params& params, bool nonlinear = true);

/// (charge, energy): mu-mass and E_g = D/2 - F (F omitted in linear mode).
std::pair<double, double> invariants(const EvolutionState& state, const Params& params,
                                     bool nonlinear = true);

/// One-step map for i v_t + r^{-1}(r v')' + kappa |v|^{q-2} v = 0 with
/// v(r_max) = 0.
///
/// Crank-Nicolson solves
///   (W + i dt/2 K) v1 = (W - i dt/2 K) v0 + i dt W kappa G(v0, v1),
///   G = (Phi(|v1|^2) - Phi(|v0|^2)) / (|v1|^2 - |v0|^2) (v0 + v1) / 2,
///   Phi(p) = (2/q) p^{q/2},
/// by fixed-point iteration, which conserves both the discrete mass and the
/// discrete energy up to the iteration tolerance. Strang splitting wraps an
/// exact nonlinear phase rotation between two linear half steps.
class Propagator {
 public:
  Propagator(const Params& params, GridPtr grid, double dt, const EvolutionOptions& opt);

  /// Advances v (length n) by dt. Throws StepError or BlowUpError.
  void step(std::vector<std::complex<double>>& v, double time);

  int last_fixed_point_iterations() const { return last_iterations_; }
  double dt() const { return dt_; }
  const Discretization& discretization() const { return d_; }

 private:
  void linear_rhs(const std::vector<std::complex<double>>& v, double tau,
                  std::vector<std::complex<double>>& out) const;
  void step_cn(std::vector<std::complex<double>>& v, double time);
  void step_strang(std::vector<std::complex<double>>& v);

  Discretization d_;
  EvolutionOptions opt_;
  double dt_;
  std::size_t m_;
  TridiagonalLU<std::complex<double>> full_;  // W + i dt/2 K
  TridiagonalLU<std::complex<double>> half_;  // W + i dt/4 K
  int last_iterations_ = 0;
  std::vector<std::complex<double>> rhs0_, next_, work_;
};

/// Advances state by steps * dt. The observer, when given, is called on the
/// initial state and after every sample_every steps.
EvolutionState propagate(const EvolutionState& state, const Params& params, double dt,
                         int steps, const EvolutionOptions& opt = {},
                         const std::function<void(const EvolutionState&)>& observer = {},
                         int sample_every = 1);

/// Closed-form free evolution of e^{-r^2/2} under i v_t + r^{-1}(r v')' = 0:
/// (1 + 2it)^{-1} exp(-r^2 / (2 (1 + 2it))).
std::complex<double> free_gaussian(double r, double t);

/// Phase advanced per Crank-Nicolson step by an exact discrete standing wave
/// with multiplier lambda: 2 atan(lambda dt / 2).
double standing_wave_phase_per_step(double lambda, double dt);

}  // namespace hardynls
