#include "hardynls/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "hardynls/errors.hpp"

namespace hardynls {

using cplx = std::complex<double>;

const char* scheme_name(Scheme s) {
  return s == Scheme::CrankNicolson ? "crank-nicolson" : "strang-splitting";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "crank-nicolson") return Scheme::CrankNicolson;
  if (name == "strang-splitting") return Scheme::StrangSplitting;
  throw ParameterError("unknown scheme '" + name + "'");
}

namespace {

Params checked(const Params& p) {
  p.validate(QRange::Stability);
  return p;
}

// Phi(p) = (2/q) p^{q/2} and Phi'(p) = p^{q/2-1}
double phi(double rho, double q) {
  if (q == 3.0) return (2.0 / 3.0) * rho * std::sqrt(rho);
  if (q == 4.0) return 0.5 * rho * rho;
  return (2.0 / q) * std::pow(rho, 0.5 * q);
}

double dphi(double rho, double q) {
  if (q == 3.0) return std::sqrt(rho);
  if (q == 4.0) return rho;
  return rho > 0.0 ? std::pow(rho, 0.5 * q - 1.0) : 0.0;
}

double phi_quotient(double r0, double r1, double q) {
  const double mid = 0.5 * (r0 + r1);
  if (std::abs(r1 - r0) <= 1e-6 * mid) return dphi(mid, q);
  return (phi(r1, q) - phi(r0, q)) / (r1 - r0);
}

TridiagonalLU<cplx> shifted_stiffness(const Discretization& d, std::size_t m, cplx s) {
  std::vector<cplx> diag(m), off(m - 1);
  for (std::size_t i = 0; i < m; ++i) diag[i] = d.w[i];
  for (std::size_t e = 0; e < m; ++e) {
    diag[e] += s * d.c[e];
    if (e + 1 < m) {
      diag[e + 1] += s * d.c[e];
      off[e] = -s * d.c[e];
    }
  }
  return TridiagonalLU<cplx>(off, diag, off);
}

void check_finite(const std::vector<cplx>& v, double time) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw BlowUpError("non-finite value in the evolved field", time);
    }
  }
}

}  // namespace

Propagator::Propagator(const Params& params, GridPtr grid, double dt,
                       const EvolutionOptions& opt)
    : d_(std::move(grid), checked(params)), opt_(opt), dt_(dt), m_(d_.size() - 1) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive");
  if (opt.max_fixed_point < 1 || !(opt.fixed_point_tol > 0)) {
    throw ParameterError("invalid fixed-point settings");
  }
  full_ = shifted_stiffness(d_, m_, cplx(0.0, 0.5 * dt));
  half_ = shifted_stiffness(d_, m_, cplx(0.0, 0.25 * dt));
  rhs0_.resize(m_);
  next_.resize(m_);
  work_.resize(m_);
}

// out = (W - i tau K) v on the free nodes
void Propagator::linear_rhs(const std::vector<cplx>& v, double tau,
                            std::vector<cplx>& out) const {
  const cplx s(0.0, -tau);
  for (std::size_t i = 0; i < m_; ++i) out[i] = d_.w[i] * v[i];
  for (std::size_t e = 0; e < m_; ++e) {
    // edge e joins e and e+1; node m is pinned at zero
    const cplx f = s * d_.c[e] * (v[e + 1] - v[e]);
    out[e] -= f;
    if (e + 1 < m_) out[e + 1] += f;
  }
}

void Propagator::step(std::vector<cplx>& v, double time) {
  if (v.size() != m_ + 1) throw ShapeError("propagator: field length mismatch");
  v[m_] = 0.0;
  if (opt_.scheme == Scheme::CrankNicolson) {
    step_cn(v, time);
  } else {
    step_strang(v);
  }
  check_finite(v, time + dt_);
}

void Propagator::step_cn(std::vector<cplx>& v, double time) {
  linear_rhs(v, 0.5 * dt_, rhs0_);
  if (!opt_.nonlinear) {
    full_.solve_in_place(rhs0_);
    std::copy(rhs0_.begin(), rhs0_.end(), v.begin());
    last_iterations_ = 1;
    return;
  }
  const double q = d_.params.q;
  // predictor: linear step
  next_ = rhs0_;
  full_.solve_in_place(next_);
  double scale = 0.0;
  for (std::size_t i = 0; i < m_; ++i) scale = std::max(scale, std::abs(v[i]));
  scale = std::max(scale, 1e-300);
  double update = 0.0;
  for (int k = 1; k <= opt_.max_fixed_point; ++k) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double r0 = std::norm(v[i]);
      const double r1 = std::norm(next_[i]);
      const cplx g = phi_quotient(r0, r1, q) * 0.5 * (v[i] + next_[i]);
      work_[i] = rhs0_[i] + cplx(0.0, dt_) * d_.w[i] * d_.kappa[i] * g;
    }
    full_.solve_in_place(work_);
    update = 0.0;
    for (std::size_t i = 0; i < m_; ++i) update = std::max(update, std::abs(work_[i] - next_[i]));
    next_.swap(work_);
    if (update <= opt_.fixed_point_tol * scale) {
      last_iterations_ = k;
      std::copy(next_.begin(), next_.end(), v.begin());
      return;
    }
    if (!std::isfinite(update)) throw BlowUpError("fixed-point iteration diverged", time);
  }
  throw StepError("fixed-point iteration did not converge", time, opt_.max_fixed_point,
                  update / scale);
}

void Propagator::step_strang(std::vector<cplx>& v) {
  auto half = [&]() {
    linear_rhs(v, 0.25 * dt_, work_);
    half_.solve_in_place(work_);
    std::copy(work_.begin(), work_.end(), v.begin());
  };
  half();
  if (opt_.nonlinear) {
    const double p = d_.params.q - 2.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = std::abs(v[i]);
      const double theta = dt_ * d_.kappa[i] * (p == 1.0 ? a : std::pow(a, p));
      v[i] *= std::polar(1.0, theta);
    }
  }
  half();
  last_iterations_ = 1;
}

EvolutionState make_state(const Field& v, const Params& params, bool nonlinear) {
  auto values = v.values();
  values.back() = 0.0;
  EvolutionState s{Field(v.grid(), std::move(values))};
  const auto [charge, energy] = invariants(s, params, nonlinear);
  s.charge0 = charge;
  s.energy0 = energy;
  return s;
}

std::pair<double, double> invariants(const EvolutionState& state, const Params& params,
                                     bool nonlinear) {
  const Discretization d(state.v.grid(), params);
  const double charge = d.mass(state.v.values());
  double energy = 0.5 * d.dirichlet(state.v.values());
  if (nonlinear) energy -= d.nonlinear(state.v.values());
  return {charge, energy};
}

EvolutionState propagate(const EvolutionState& state, const Params& params, double dt,
                         int steps, const EvolutionOptions& opt,
                         const std::function<void(const EvolutionState&)>& observer,
                         int sample_every) {
  if (steps < 0) throw ParameterError("steps must be nonnegative");
  if (sample_every < 1) throw ParameterError("sample_every must be >= 1");
  Propagator prop(params, state.v.grid(), dt, opt);
  std::vector<cplx> v = state.v.values();
  EvolutionState out = state;
  if (observer) observer(out);
  double t = state.time;
  for (int k = 1; k <= steps; ++k) {
    prop.step(v, t);
    t = state.time + k * dt;
    if (observer && k % sample_every == 0) {
      out.v = Field(state.v.grid(), v);
      out.time = t;
      observer(out);
    }
  }
  out.v = Field(state.v.grid(), std::move(v));
  out.time = t;
  return out;
}

std::complex<double> free_gaussian(double r, double t) {
  const cplx z(1.0, 2.0 * t);
  return std::exp(-r * r / (2.0 * z)) / z;
}

double standing_wave_phase_per_step(double lambda, double dt) {
  return 2.0 * std::atan(0.5 * lambda * dt);
}

}  // namespace hardynls
