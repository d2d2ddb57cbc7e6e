#pragma once

#include <optional>

#include "hardynls/weight.hpp"

namespace hardynls {

/// Which admissible interval of the nonlinearity exponent q a caller needs.
enum class QRange {
  // 2 < q < 2N/(N-2): interpolation and embedding checks.
  Inequality,
  // 2 < q <= 2 + 4/N: constrained minimization on a bounded radial grid.
  GroundState,
  // 2 < q < 2 + 4/N: global existence and orbital stability.
  Stability,
};

struct Params {
  int N = 3;
  double q = 3.0;
  double gamma = 1.0;
  std::optional<WeightSpec> weight;

  double hardy_exponent() const { return 0.5 * (N - 2); }
  double critical_sobolev() const { return 2.0 * N / (N - 2); }
  double mass_critical() const { return 2.0 + 4.0 / N; }

  /// g(r), identically 1 when no weight is configured.
  double g(double r) const { return weight ? (*weight)(r) : 1.0; }

  /// Throws ParameterError naming the first violated constraint.
  void validate(QRange range) const;
};

/// Volume of the unit ball in R^N; the unit sphere has area N * omega_N.
double unit_ball_volume(int N);

inline double sphere_area(int N) { return N * unit_ball_volume(N); }

}  // namespace hardynls
