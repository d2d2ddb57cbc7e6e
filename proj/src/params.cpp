#include "hardynls/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hardynls/errors.hpp"

namespace hardynls {

double unit_ball_volume(int N) {
  return std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

void Params::validate(QRange range) const {
  if (N < 3) {
    throw ParameterError("N must be >= 3, got " + std::to_string(N));
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be a positive finite mass");
  }
  if (!std::isfinite(q) || !(q > 2.0)) {
    throw ParameterError("q must satisfy q > 2, got " + std::to_string(q));
  }
  switch (range) {
    case QRange::Inequality:
      if (!(q < critical_sobolev())) {
        throw ParameterError("q must be below 2N/(N-2) = " +
                             std::to_string(critical_sobolev()));
      }
      break;
    case QRange::GroundState:
      // 10/3 and 2 + 4/3 differ in the last bit; the closed end must admit both
      if (!(q <= mass_critical() * (1.0 + 1e-12))) {
        throw ParameterError("q must satisfy q <= 2 + 4/N = " +
                             std::to_string(mass_critical()) +
                             " for the constrained minimization");
      }
      break;
    case QRange::Stability:
      if (!(q < mass_critical() * (1.0 - 1e-12))) {
        throw ParameterError("q must satisfy q < 2 + 4/N = " +
                             std::to_string(mass_critical()) +
                             " for evolution and stability");
      }
      break;
  }
  if (weight) weight->validate();
}

}  // namespace hardynls
