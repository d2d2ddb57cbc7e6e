#include "hardynls/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hardynls/errors.hpp"
#include "hardynls/random_fields.hpp"
#include "hardynls/tridiagonal.hpp"

namespace hardynls {

namespace {

double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 0.5) return std::sqrt(a);
  return std::pow(a, p);
}

// kappa_i |v_i|^{q-2} v_i
std::vector<double> nonlinearity(const Discretization& d, const std::vector<double>& v) {
  const double p = d.params.q - 2.0;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = d.kappa[i] * abs_pow(v[i], p) * v[i];
  return out;
}

void rescale_to_mass(const Discretization& d, std::vector<double>& v, double gamma) {
  const double m = d.mass(v);
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw DegenerateInputError("cannot normalize a zero-mass field");
  }
  const double s = std::sqrt(gamma / m);
  for (double& x : v) x *= s;
}

double multiplier(const EnergyReport& e, double q) {
  return (q * e.nonlinear - e.dirichlet_mu) / e.mass_mu;
}

StandingWave finalize(const Discretization& d, std::vector<double> v, double gamma) {
  StandingWave sw{Field(d.grid, v), 0.0, 0.0, {}, 0.0, 0.0, 0.0, 0.0, 0, 0.0, {}};
  sw.gamma = gamma;
  sw.energies = energy_report(d, v);
  sw.lambda = multiplier(sw.energies, d.params.q);
  sw.residual = elliptic_residual(d, v, sw.lambda);
  const OriginFit fit = origin_behavior(sw.v, d.params.N);
  sw.v0 = fit.v0;
  sw.exponent = fit.exponent;
  const int N = d.params.N;
  sw.Lambda_origin = 0.5 * N * (N - 2) * unit_ball_volume(N) * sw.v0 * sw.v0;
  return sw;
}

std::vector<double> pinned_real(const Field& f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f[i]);
  v.back() = 0.0;
  return v;
}

}  // namespace

double elliptic_residual(const Discretization& d, const std::vector<double>& v,
                         double lambda) {
  const auto Kv = d.stiffness_apply(v);
  const auto nl = nonlinearity(d, v);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double r = Kv[i] / d.w[i] + lambda * v[i] - nl[i];
    s += d.w[i] * r * r;
  }
  return std::sqrt(d.area * s);
}

double elliptic_residual(const Field& v, double lambda, const Params& params) {
  const Discretization d(v.grid(), params);
  for (const auto& z : v.values()) {
    if (z.imag() != 0.0) throw DomainError("elliptic residual expects a real field");
  }
  return elliptic_residual(d, v.real_part(), lambda);
}

double residual_fit_multiplier(const Field& v, const Params& params) {
  // argmin_lambda |A v - nl + lambda v|_mu = -<A v - nl, v>_mu / <v, v>_mu
  const Discretization d(v.grid(), params);
  const auto x = v.real_part();
  const auto Kv = d.stiffness_apply(x);
  const auto nl = nonlinearity(d, x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    num += (Kv[i] - d.w[i] * nl[i]) * x[i];
    den += d.w[i] * x[i] * x[i];
  }
  if (!(den > 0.0)) throw DegenerateInputError("residual fit of a zero field");
  return -num / den;
}

StandingWave normalized_gradient_flow(const Params& params, const GridPtr& grid,
                                      const Field& init, const FlowOptions& opt) {
  params.validate(QRange::GroundState);
  if (!(opt.tol > 0) || opt.max_iter < 1 || !(opt.dt0 > 0) || !(opt.dt_min > 0) ||
      !(opt.dt_max >= opt.dt0) || !(opt.dt_growth >= 1.0) || opt.stall_window < 1) {
    throw ParameterError("invalid flow options");
  }
  if (!init.grid()->same_nodes(*grid)) throw ShapeError("init lives on another grid");
  const Discretization d(grid, params);
  const std::size_t n = d.size();
  const std::size_t m = n - 1;  // v = 0 at r_max

  std::vector<double> v = pinned_real(init);
  if (!(d.mass(v) > 0.0)) throw DegenerateInputError("init has zero mass");
  rescale_to_mass(d, v, params.gamma);

  std::vector<double> kd(m, 0.0), off(m - 1);
  for (std::size_t e = 0; e < m; ++e) {
    kd[e] += d.c[e];
    if (e + 1 < m) {
      kd[e + 1] += d.c[e];
      off[e] = -d.c[e];
    }
  }

  EnergyReport e = energy_report(d, v);
  double lambda = multiplier(e, params.q);
  double residual = elliptic_residual(d, v, lambda);
  std::vector<double> history{e.J};
  std::vector<double> recent{e.J};
  double dt = opt.dt0;

  std::vector<double> diag(m), lo(m - 1), rhs(m), trial(n, 0.0);
  double best_residual = residual;
  int last_improvement = 0;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    const bool stalled =
        recent.size() > static_cast<std::size_t>(opt.stall_window) &&
        std::abs(recent.back() - recent[recent.size() - 1 - opt.stall_window]) <
            opt.stall_tol;
    if (residual < opt.tol && stalled) break;
    if (stalled && it - last_improvement > opt.stagnation_window) {
      throw ConvergenceError("flow stagnated above tol (residual floor of the grid); "
                             "raise tol or r_min", it, e.J, residual);
    }

    const double lp = std::max(lambda, 0.0);
    const double lm = std::max(-lambda, 0.0);
    const auto nl = nonlinearity(d, v);
    for (;;) {
      for (std::size_t i = 0; i < m; ++i) {
        diag[i] = d.w[i] * (1.0 + dt * lp) + dt * kd[i];
        rhs[i] = d.w[i] * (v[i] + dt * (nl[i] + lm * v[i]));
      }
      for (std::size_t i = 0; i + 1 < m; ++i) lo[i] = dt * off[i];
      TridiagonalLU<double>(lo, diag, lo).solve_in_place(rhs);
      std::copy(rhs.begin(), rhs.end(), trial.begin());
      trial[m] = 0.0;
      rescale_to_mass(d, trial, params.gamma);
      const EnergyReport et = energy_report(d, trial);
      if (et.J <= e.J + opt.energy_slack) {
        v.swap(trial);
        e = et;
        dt = std::min(dt * opt.dt_growth, opt.dt_max);
        break;
      }
      dt *= 0.5;
      if (dt < opt.dt_min) {
        throw ConvergenceError("flow step size fell below dt_min", it, e.J, residual);
      }
    }
    lambda = multiplier(e, params.q);
    residual = elliptic_residual(d, v, lambda);
    if (residual < 0.99 * best_residual) {
      best_residual = residual;
      last_improvement = it;
    }
    if (opt.keep_history) history.push_back(e.J);
    recent.push_back(e.J);
    if (recent.size() > static_cast<std::size_t>(4 * opt.stall_window)) {
      recent.erase(recent.begin(), recent.end() - opt.stall_window - 1);
    }
  }
  if (it >= opt.max_iter) {
    throw ConvergenceError("flow did not converge within max_iter", it, e.J, residual);
  }
  StandingWave sw = finalize(d, std::move(v), params.gamma);
  sw.iterations = it;
  sw.final_dt = dt;
  sw.J_history = std::move(history);
  return sw;
}

OriginFit origin_behavior(const Field& v, int N) {
  const RadialGrid& g = *v.grid();
  const auto& r = g.nodes();
  const double lo = 10.0 * g.r_min();
  const double hi = 1e3 * g.r_min();
  if (hi > g.r_max()) throw DomainError("origin fit window exceeds the grid");
  const double a = 0.5 * (N - 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (std::size_t i = 0; i < r.size() && r[i] <= hi * (1 + 1e-12); ++i) {
    if (r[i] < lo * (1 - 1e-12)) continue;
    const double m = std::abs(v[i]);
    if (!(m > 0.0)) throw DomainError("origin fit: field vanishes in the fit window");
    const double x = std::log(r[i]);
    const double y = std::log(m) - a * x;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  if (cnt < 2) throw DomainError("origin fit window holds fewer than two nodes");
  OriginFit out;
  out.exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);

  if (!(r[2] < 1.0)) throw DomainError("origin extrapolation needs r < 1 near the origin");
  double tx = 0, ty = 0, txx = 0, txy = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = log_time_coordinate(r[i], N);
    const double y = v[i].real();
    tx += t;
    ty += y;
    txx += t * t;
    txy += t * y;
  }
  const double slope = (3 * txy - tx * ty) / (3 * txx - tx * tx);
  out.v0 = (ty - slope * tx) / 3.0;
  return out;
}

OriginFit origin_behavior(const StandingWave& sw, int N) { return origin_behavior(sw.v, N); }

namespace {

Field normalized_profile(const GridPtr& grid, const Params& params,
                         const std::function<double(double)>& f) {
  const Discretization d(grid, params);
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->nodes()[i]);
  v.back() = 0.0;
  rescale_to_mass(d, v, params.gamma);
  return Field(grid, v);
}

}  // namespace

Field gaussian_init(const GridPtr& grid, const Params& params, double width) {
  return normalized_profile(grid, params, [width](double r) {
    return std::exp(-0.5 * r * r / (width * width));
  });
}

Field exponential_init(const GridPtr& grid, const Params& params, double scale) {
  return normalized_profile(grid, params, [scale](double r) { return std::exp(-r / scale); });
}

namespace {

struct OracleState {
  std::vector<double> v;
  double J = 0.0;
};

class SobolevDescent {
 public:
  explicit SobolevDescent(const Discretization& d) : d_(d), m_(d.size() - 1) {
    std::vector<double> diag(m_, 0.0), off(m_ - 1);
    for (std::size_t e = 0; e < m_; ++e) {
      diag[e] += d.c[e];
      if (e + 1 < m_) {
        diag[e + 1] += d.c[e];
        off[e] = -d.c[e];
      }
    }
    for (std::size_t i = 0; i < m_; ++i) diag[i] += d.w[i];
    h_.factor(off, diag, off);
  }

  // H-gradient of J projected on the tangent space of the mass sphere.
  std::vector<double> gradient(const std::vector<double>& v) const {
    const auto Kv = d_.stiffness_apply(v);
    const auto nl = nonlinearity(d_, v);
    std::vector<double> g(m_), n(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      g[i] = Kv[i] + d_.w[i] * (v[i] - nl[i]);
      n[i] = d_.w[i] * v[i];
    }
    const std::vector<double> wv = n;
    h_.solve_in_place(g);
    h_.solve_in_place(n);
    // project in the H metric: <x, y>_H = x^T H y, H n = W v
    double gn = 0, nn = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      gn += g[i] * wv[i];
      nn += n[i] * wv[i];
    }
    const double t = gn / nn;
    for (std::size_t i = 0; i < m_; ++i) g[i] -= t * n[i];
    g.push_back(0.0);
    return g;
  }

  double h_dot(const std::vector<double>& a, const std::vector<double>& b) const {
    const auto Ka = d_.stiffness_apply(a);
    double s = 0;
    for (std::size_t i = 0; i < m_; ++i) s += (Ka[i] + d_.w[i] * a[i]) * b[i];
    return s;
  }

 private:
  const Discretization& d_;
  std::size_t m_;
  TridiagonalLU<double> h_;
};

}  // namespace

StandingWave oracle_minimize(const Params& params, const GridPtr& grid, int restarts,
                             int budget, std::uint64_t seed) {
  params.validate(QRange::GroundState);
  if (grid->size() > 512) throw ParameterError("oracle_minimize is limited to n <= 512");
  if (restarts < 1 || budget < 0) throw ParameterError("restarts >= 1 and budget >= 0");
  const Discretization d(grid, params);
  const SobolevDescent sd(d);
  const std::size_t n = d.size();
  Rng rng(seed);
  BumpOptions bo;
  bo.positive = true;

  OracleState best;
  double best_res = std::numeric_limits<double>::infinity();
  best.J = std::numeric_limits<double>::infinity();

  for (int k = 0; k < restarts; ++k) {
    OracleState s;
    s.v = evaluate_bumps(*grid, draw_bumps(*grid, rng, bo));
    s.v.back() = 0.0;
    rescale_to_mass(d, s.v, params.gamma);
    s.J = energy_report(d, s.v).J;

    std::vector<double> g = sd.gradient(s.v), g_prev, v_prev;
    double alpha = 1.0;
    for (int it = 0; it < budget; ++it) {
      const double gg = sd.h_dot(g, g);
      if (!(gg > 1e-28)) break;
      if (!v_prev.empty()) {
        std::vector<double> sv(n), yv(n);
        for (std::size_t i = 0; i < n; ++i) {
          sv[i] = s.v[i] - v_prev[i];
          yv[i] = g[i] - g_prev[i];
        }
        const double sy = sd.h_dot(sv, yv);
        if (sy > 0) alpha = sd.h_dot(sv, sv) / sy;
      }
      bool accepted = false;
      std::vector<double> trial(n);
      double Jt = s.J;
      for (int bt = 0; bt < 60; ++bt) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = std::abs(s.v[i] - alpha * g[i]);
        trial.back() = 0.0;
        rescale_to_mass(d, trial, params.gamma);
        Jt = energy_report(d, trial).J;
        if (Jt <= s.J - 1e-4 * alpha * gg) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
      v_prev = std::move(s.v);
      g_prev = std::move(g);
      s.v = trial;
      s.J = Jt;
      g = sd.gradient(s.v);
    }
    const EnergyReport e = energy_report(d, s.v);
    const double res = elliptic_residual(d, s.v, multiplier(e, params.q));
    if (s.J < best.J || (s.J == best.J && res < best_res)) {
      best = s;
      best_res = res;
    }
  }
  return finalize(d, std::move(best.v), params.gamma);
}

}  // namespace hardynls
