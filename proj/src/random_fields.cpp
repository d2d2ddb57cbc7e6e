#include "hardynls/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hardynls/errors.hpp"

namespace hardynls {

std::vector<Bump> draw_bumps(const RadialGrid& grid, Rng& rng, const BumpOptions& opt) {
  const double s_lo = std::log(grid.r_min());
  const double s_hi = std::log(grid.r_max());
  const double c_lo = std::log(10.0 * grid.r_min());
  const double c_hi = std::log(grid.r_max() / 10.0);
  if (!(c_hi > c_lo)) throw ParameterError("grid too short for random bumps");
  const int count = rng.integer(opt.min_bumps, opt.max_bumps);
  std::vector<Bump> bumps(static_cast<std::size_t>(count));
  for (auto& b : bumps) {
    const double s = rng.uniform(c_lo, c_hi);
    const double room = std::min(s - s_lo, s_hi - s);
    const double hi = std::min(opt.sigma_max, room / 6.0);
    b.center = std::exp(s);
    b.sigma = rng.uniform(std::min(opt.sigma_min, hi), hi);
    const double sign = opt.positive ? 1.0 : rng.sign();
    b.amplitude = sign * rng.uniform(0.5, 1.5);
  }
  return bumps;
}

std::vector<double> evaluate_bumps(const RadialGrid& grid, const std::vector<Bump>& bumps) {
  const auto& r = grid.nodes();
  std::vector<double> v(r.size(), 0.0);
  for (const auto& b : bumps) {
    const double c = std::log(b.center);
    const double k = 0.5 / (b.sigma * b.sigma);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double d = std::log(r[i]) - c;
      const double e = k * d * d;
      if (e < 745.0) v[i] += b.amplitude * std::exp(-e);
    }
  }
  return v;
}

std::string describe_bumps(const std::vector<Bump>& bumps) {
  std::string out;
  char buf[96];
  for (const auto& b : bumps) {
    std::snprintf(buf, sizeof buf, "%s(%.17g,%.17g,%.17g)", out.empty() ? "" : ";",
                  b.center, b.sigma, b.amplitude);
    out += buf;
  }
  return out;
}

}  // namespace hardynls
