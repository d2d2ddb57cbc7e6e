#include "hardynls/inequalities.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "hardynls/errors.hpp"
#include "hardynls/functionals.hpp"
#include "hardynls/random_fields.hpp"

namespace hardynls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string sample_label(int index, const std::vector<Bump>& bumps, double extra = 0.0,
                         bool with_extra = false) {
  std::string s = "index=" + std::to_string(index);
  if (with_extra) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " origin_coeff=%.17g", extra);
    s += buf;
  }
  return s + " bumps=" + describe_bumps(bumps);
}

// sphere_area * int f r^p dr over the grid, trapezoid in the native coordinate
double radial_integral(const RadialGrid& g, const std::vector<double>& f, double p, int N) {
  const auto w = g.weights(p);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return sphere_area(N) * s;
}

}  // namespace

double InequalityReport::diagnostic(const std::string& key) const {
  for (const auto& [k, v] : diagnostics) {
    if (k == key) return v;
  }
  throw ParameterError("report has no diagnostic '" + key + "'");
}

InequalityReport check_hardy(int sample_count, std::uint64_t seed, int N, const GridPtr& grid,
                             double tol, double identity_tol) {
  if (N < 3) throw ParameterError("N must be >= 3");
  if (sample_count < 1) throw ParameterError("sample_count must be >= 1");
  InequalityReport rep;
  rep.check = "hardy";
  rep.n_samples = sample_count;
  rep.seed = seed;
  rep.grid_size = grid->size();
  rep.min_ratio = kInf;
  rep.max_ratio = -kInf;
  rep.empirical_constant = kInf;
  double worst_identity = 0.0;
  Rng rng(seed);
  for (int k = 0; k < sample_count; ++k) {
    const auto bumps = draw_bumps(*grid, rng);
    const Field v(grid, evaluate_bumps(*grid, bumps));
    const Field u = to_u(v, N);
    const double I = hardy_functional_u(u, N, grid->r_min());
    const double D = weighted_dirichlet(v, N);
    const double err = std::abs(I - D) / D;
    // int |u|^2 |x|^{-2} dx
    const double pot = radial_integral(*grid, u.abs_sq(), N - 3.0, N);
    const double a = 0.5 * (N - 2);
    const double quotient = (I + a * a * pot) / pot;
    if (I < rep.min_ratio) {
      rep.min_ratio = I;
      rep.extreme_sample = sample_label(k, bumps);
    }
    rep.max_ratio = std::max(rep.max_ratio, I);
    rep.empirical_constant = std::min(rep.empirical_constant, quotient);
    worst_identity = std::max(worst_identity, err);
    if (!rep.violating_sample && (!(I >= -tol) || !(err <= identity_tol))) {
      rep.violating_sample = sample_label(k, bumps);
    }
  }
  rep.pass = !rep.violating_sample.has_value();
  rep.diagnostics = {{"max_identity_error", worst_identity},
                     {"tolerance", tol},
                     {"identity_tolerance", identity_tol},
                     {"optimal_constant", 0.25 * (N - 2) * (N - 2)}};
  return rep;
}

double ckn_ratio(const Field& v, const Params& params) {
  const Discretization d(v.grid(), params);
  const int N = params.N;
  const double q = params.q;
  const double lhs = q * d.nonlinear(v.values());
  const double D = d.dirichlet(v.values());
  const double M = d.mass(v.values());
  const double rhs = std::pow(D, N * (q - 2) / 4.0) * std::pow(M, (2 * q - N * (q - 2)) / 4.0);
  if (!(rhs > 0.0)) throw DegenerateInputError("interpolation ratio of a zero field");
  return lhs / rhs;
}

InequalityReport check_ckn(int sample_count, std::uint64_t seed, const Params& params,
                           const GridPtr& grid) {
  params.validate(QRange::Inequality);
  if (sample_count < 1) throw ParameterError("sample_count must be >= 1");
  InequalityReport rep;
  rep.check = "ckn";
  rep.n_samples = sample_count;
  rep.seed = seed;
  rep.grid_size = grid->size();
  rep.min_ratio = kInf;
  rep.max_ratio = -kInf;
  Rng rng(seed);
  for (int k = 0; k < sample_count; ++k) {
    const auto bumps = draw_bumps(*grid, rng);
    const double ratio = ckn_ratio(Field(grid, evaluate_bumps(*grid, bumps)), params);
    if (!std::isfinite(ratio) && !rep.violating_sample) {
      rep.violating_sample = sample_label(k, bumps);
    }
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.extreme_sample = sample_label(k, bumps);
    }
  }
  rep.empirical_constant = rep.max_ratio;
  rep.pass = !rep.violating_sample && std::isfinite(rep.empirical_constant);
  const int N = params.N;
  const double q = params.q;
  rep.diagnostics = {{"dirichlet_exponent", N * (q - 2) / 4.0},
                     {"mass_exponent", (2 * q - N * (q - 2)) / 4.0}};
  return rep;
}

namespace {

// sphere_area * int g^p r^{N-1} dr over (0, inf) from the table plus
// power-law tails; +inf when a tail diverges.
double weight_lp_integral(const WeightSpec& spec, double p, int N) {
  const auto& r = spec.radii;
  const auto& g = spec.values;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double f0 = std::pow(g[i], p) * std::pow(r[i], N);
    const double f1 = std::pow(g[i + 1], p) * std::pow(r[i + 1], N);
    s += 0.5 * (f0 + f1) * std::log(r[i + 1] / r[i]);
  }
  const double e0 = p * spec.omega_zero + N;
  if (g.front() > 0.0) {
    if (!(e0 > 0.0)) return kInf;
    s += std::pow(g.front(), p) * std::pow(r.front(), N) / e0;
  }
  const double e1 = p * spec.omega_inf + N;
  if (g.back() > 0.0) {
    if (!(e1 < 0.0)) return kInf;
    s += std::pow(g.back(), p) * std::pow(r.back(), N) / -e1;
  }
  return sphere_area(N) * s;
}

}  // namespace

WeightVerdict check_weight_condition(const WeightSpec& spec, const Params& params) {
  const int N = params.N;
  const double q = params.q;
  if (N < 3) throw ParameterError("N must be >= 3");
  const double crit = 2.0 * N / (N - 2);
  if (!(q >= 1.0) || !(q < crit)) {
    throw ParameterError("weight condition needs 1 <= q < 2N/(N-2)");
  }
  spec.validate();
  WeightVerdict out;
  out.threshold = -N + q * (N - 2) / 2.0;
  out.condition = spec.omega_zero > out.threshold && spec.omega_inf < out.threshold;
  out.lp_exponent = crit / (crit - q);
  const double i1 = weight_lp_integral(spec, 1.0, N);
  const double ip = weight_lp_integral(spec, out.lp_exponent, N);
  out.l1_norm = i1;
  out.lp_norm = std::isfinite(ip) ? std::pow(ip, 1.0 / out.lp_exponent) : kInf;
  out.integrability = std::isfinite(out.l1_norm) && std::isfinite(out.lp_norm);
  return out;
}

const char* h_kind_name(HKind h) {
  switch (h) {
    case HKind::Piecewise: return "piecewise-paper";
    case HKind::LogWeight: return "log-weight";
    case HKind::Unit: return "unit";
  }
  return "piecewise-paper";
}

HKind parse_h_kind(const std::string& name) {
  if (name == "piecewise-paper") return HKind::Piecewise;
  if (name == "log-weight") return HKind::LogWeight;
  throw ParameterError("unknown h_kind '" + name + "' (piecewise-paper | log-weight)");
}

double h_weight(HKind h, double r, int N) {
  switch (h) {
    case HKind::Piecewise: return r < 1.0 ? r * r : 1.0;
    case HKind::LogWeight: {
      if (r >= 1.0) return 0.0;
      const double L = 1.0 - std::log(r);  // -log(r / e)
      return std::pow(L, -2.0 * (N - 1) / (N - 2));
    }
    case HKind::Unit: return 1.0;
  }
  return 1.0;
}

double ihs_rhs_integral(const Field& v, int N, HKind h) {
  // h |phi|^{2*} r^{N-1} = h |v|^{2*} r^{-1}, since 2* (N-2)/2 = N
  const auto& r = v.grid()->nodes();
  const double p = 2.0 * N / (N - 2);
  std::vector<double> f(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    f[i] = h_weight(h, r[i], N) * std::pow(std::abs(v[i]), p);
  }
  return radial_integral(*v.grid(), f, -1.0, N);
}

double ihs_ratio(const Field& v, int N, HKind h) {
  const double H = std::sqrt(weighted_dirichlet(v, N) + mass_mu(v, N));
  const double p = 2.0 * N / (N - 2);
  const double rhs = std::pow(ihs_rhs_integral(v, N, h), 1.0 / p);
  if (!(rhs > 0.0)) return kInf;
  return H / rhs;
}

InequalityReport check_ihs(int sample_count, std::uint64_t seed, int N, HKind h,
                           const GridPtr& grid) {
  if (N < 3) throw ParameterError("N must be >= 3");
  if (sample_count < 1) throw ParameterError("sample_count must be >= 1");
  InequalityReport rep;
  rep.check = std::string("ihs:") + h_kind_name(h);
  rep.n_samples = sample_count;
  rep.seed = seed;
  rep.grid_size = grid->size();
  rep.min_ratio = kInf;
  rep.max_ratio = -kInf;
  const auto& r = grid->nodes();
  Rng rng(seed);
  for (int k = 0; k < sample_count; ++k) {
    const auto bumps = draw_bumps(*grid, rng);
    const double c = rng.uniform(-1.0, 1.0);
    auto v = evaluate_bumps(*grid, bumps);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * std::exp(-r[i] * r[i]);
    v.back() = 0.0;
    const double ratio = ihs_ratio(Field(grid, v), N, h);
    if (!(ratio > 0.0) && !rep.violating_sample) {
      rep.violating_sample = sample_label(k, bumps, c, true);
    }
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.extreme_sample = sample_label(k, bumps, c, true);
    }
    if (std::isfinite(ratio)) rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.empirical_constant = rep.min_ratio;
  rep.pass = !rep.violating_sample && std::isfinite(rep.min_ratio) && rep.min_ratio > 0.0;
  rep.diagnostics = {{"critical_exponent", 2.0 * N / (N - 2)}};
  return rep;
}

RefinementReport compare_refinement(InequalityReport coarse, InequalityReport fine) {
  RefinementReport out;
  const double a = coarse.empirical_constant;
  const double b = fine.empirical_constant;
  out.change = (a > 0 && b > 0) ? std::max(a / b, b / a) : kInf;
  out.pass = coarse.pass && fine.pass && std::isfinite(out.change) && out.change < 2.0;
  out.coarse = std::move(coarse);
  out.fine = std::move(fine);
  return out;
}

}  // namespace hardynls
