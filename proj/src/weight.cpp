#include "hardynls/weight.hpp"

#include <algorithm>
#include <cmath>

#include "hardynls/errors.hpp"

namespace hardynls {

namespace {

double loglog_slope(const std::vector<double>& r, const std::vector<double>& g,
                    std::size_t begin, std::size_t end) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (std::size_t i = begin; i < end; ++i) {
    if (g[i] <= 0.0) continue;
    const double x = std::log(r[i]);
    const double y = std::log(g[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  if (n < 2) return std::nan("");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

WeightSpec WeightSpec::power_law(double omega_zero, double omega_inf, double r_c,
                                 double r_lo, double r_hi, int samples) {
  if (!(r_c > 0) || !(r_lo > 0) || !(r_hi > r_lo) || samples < 4) {
    throw ParameterError("power_law weight: invalid table bounds");
  }
  WeightSpec spec;
  spec.omega_zero = omega_zero;
  spec.omega_inf = omega_inf;
  spec.radii.resize(samples);
  spec.values.resize(samples);
  const double a = std::log(r_lo);
  const double b = std::log(r_hi);
  for (int i = 0; i < samples; ++i) {
    const double r = std::exp(a + (b - a) * i / (samples - 1));
    spec.radii[i] = r;
    spec.values[i] =
        std::pow(r, omega_zero) * std::pow(1.0 + r / r_c, omega_inf - omega_zero);
  }
  return spec;
}

double WeightSpec::operator()(double r) const {
  if (radii.empty()) return 1.0;
  if (r <= radii.front()) {
    return values.front() * std::pow(r / radii.front(), omega_zero);
  }
  if (r >= radii.back()) {
    return values.back() * std::pow(r / radii.back(), omega_inf);
  }
  const auto it = std::upper_bound(radii.begin(), radii.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - radii.begin());
  const std::size_t i = j - 1;
  const double g0 = values[i];
  const double g1 = values[j];
  const double t = std::log(r / radii[i]) / std::log(radii[j] / radii[i]);
  if (g0 > 0 && g1 > 0) {
    return g0 * std::pow(g1 / g0, t);
  }
  return g0 + (g1 - g0) * t;
}

std::pair<double, double> WeightSpec::fitted_exponents() const {
  const std::size_t n = radii.size();
  // one decade at each end, at least three samples
  std::size_t lo_end = 1;
  while (lo_end < n && radii[lo_end] <= 10.0 * radii.front()) ++lo_end;
  std::size_t hi_begin = n - 1;
  while (hi_begin > 0 && radii[hi_begin - 1] >= 0.1 * radii.back()) --hi_begin;
  lo_end = std::max<std::size_t>(lo_end, std::min<std::size_t>(3, n));
  hi_begin = std::min(hi_begin, n >= 3 ? n - 3 : 0);
  return {loglog_slope(radii, values, 0, lo_end),
          loglog_slope(radii, values, hi_begin, n)};
}

void WeightSpec::validate(double slope_tol) const {
  if (radii.size() != values.size() || radii.size() < 4) {
    throw ParameterError("weight: radii and values must align (>= 4 samples)");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw ParameterError("weight: radii must be positive and increasing");
    }
    if (!(values[i] >= 0) || !std::isfinite(values[i])) {
      throw ParameterError("weight: g must be finite and nonnegative");
    }
  }
  // g == 0 switches the nonlinearity off and has no slope to check
  if (std::all_of(values.begin(), values.end(), [](double x) { return x == 0.0; })) {
    return;
  }
  const auto [s0, sinf] = fitted_exponents();
  if (!(std::abs(s0 - omega_zero) <= slope_tol)) {
    throw ParameterError("weight: tabulated slope at 0 does not match omega_zero");
  }
  if (!(std::abs(sinf - omega_inf) <= slope_tol)) {
    throw ParameterError("weight: tabulated slope at infinity does not match omega_inf");
  }
}

}  // namespace hardynls
