#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardynls/radial_grid.hpp"

namespace hardynls {

/// Platform-independent draws on top of mt19937_64 (the standard
/// distributions are implementation-defined, so they are not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
  }
  double sign() { return uniform() < 0.5 ? -1.0 : 1.0; }

 private:
  std::mt19937_64 engine_;
};

struct Bump {
  double center = 0.0;  // radius
  double sigma = 0.0;   // width in ln r
  double amplitude = 0.0;
};

struct BumpOptions {
  int min_bumps = 3;
  int max_bumps = 8;
  bool positive = false;
  double sigma_min = 0.15;
  double sigma_max = 0.6;
};

/// Sum of Gaussian bumps in s = ln r. Centers are log-uniform in
/// [10 r_min, r_max / 10]; widths stay below a sixth of the distance to the
/// nearer boundary in s, so the profile is negligible at both ends.
std::vector<Bump> draw_bumps(const RadialGrid& grid, Rng& rng, const BumpOptions& opt = {});
std::vector<double> evaluate_bumps(const RadialGrid& grid, const std::vector<Bump>& bumps);

/// Compact text form of a bump list, used for violating-sample reports.
std::string describe_bumps(const std::vector<Bump>& bumps);

}  // namespace hardynls
