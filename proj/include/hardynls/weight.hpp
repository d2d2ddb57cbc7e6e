#pragma once

#include <utility>
#include <vector>

namespace hardynls {

/// Radial weight g(r) >= 0 multiplying the nonlinearity, tabulated on a
/// strictly increasing set of radii together with its power-law exponents at
/// the origin and at infinity.
struct WeightSpec {
  double omega_zero = 0.0;
  double omega_inf = 0.0;
  std::vector<double> radii;
  std::vector<double> values;

  /// g(r) = r^omega_zero * (1 + r/r_c)^(omega_inf - omega_zero), tabulated
  /// log-uniformly on [r_lo, r_hi].
  static WeightSpec power_law(double omega_zero, double omega_inf,
                              double r_c = 1.0, double r_lo = 1e-10,
                              double r_hi = 1e10, int samples = 401);

  /// Log-log interpolation inside the table, power-law extrapolation with the
  /// declared exponents outside it.
  double operator()(double r) const;

  /// Least-squares log-log slopes over the first and last decade of the table.
  std::pair<double, double> fitted_exponents() const;

  /// Throws ParameterError on a malformed table, a negative value, or fitted
  /// end slopes further than slope_tol from the declared exponents.
  void validate(double slope_tol = 0.05) const;
};

}  // namespace hardynls
