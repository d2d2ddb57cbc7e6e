#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardynls/params.hpp"
#include "hardynls/radial_grid.hpp"
#include "hardynls/weight.hpp"

namespace hardynls {

struct InequalityReport {
  std::string check;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::size_t grid_size = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double empirical_constant = 0.0;
  std::string extreme_sample;  // bumps of the sample attaining the reported extreme
  std::optional<std::string> violating_sample;
  bool pass = false;
  std::vector<std::pair<std::string, double>> diagnostics;

  double diagnostic(const std::string& key) const;
};

/// I(u) for u = T(v) over random bump fields v. min_ratio is min I(u),
/// empirical_constant is min int |grad u|^2 / int |u|^2 |x|^{-2} (never below
/// ((N-2)/2)^2 in exact arithmetic). Passes when min I(u) >= -tol and every
/// sample satisfies |I(u) - D(v)| <= identity_tol * D(v).
InequalityReport check_hardy(int sample_count, std::uint64_t seed, int N,
                             const GridPtr& grid, double tol = 1e-8,
                             double identity_tol = 1e-6);

/// Ratios LHS / RHS of the weighted interpolation inequality
///   int |x|^{-q(N-2)/2} g |v|^q <= C D^{N(q-2)/4} M^{(2q-N(q-2))/4}
/// over random bump fields; empirical_constant is the largest ratio.
/// Throws ParameterError unless 2 < q < 2N/(N-2).
InequalityReport check_ckn(int sample_count, std::uint64_t seed, const Params& params,
                           const GridPtr& grid);

/// The ratio for a single field.
double ckn_ratio(const Field& v, const Params& params);

struct WeightVerdict {
  double threshold = 0.0;      // -N + q(N-2)/2
  bool condition = false;      // omega_zero > threshold and omega_inf < threshold
  double lp_exponent = 0.0;    // 2* / (2* - q)
  double l1_norm = 0.0;        // +inf when divergent
  double lp_norm = 0.0;        // +inf when divergent
  bool integrability = false;  // g in L^1 and L^{2*/(2*-q)}
};

/// Pure predicate on the declared exponents, plus the integrability
/// sufficient condition from quadratures of the table with power-law tails.
/// Requires N >= 3 and 1 <= q < 2N/(N-2).
WeightVerdict check_weight_condition(const WeightSpec& spec, const Params& params);

enum class HKind { Piecewise, LogWeight, Unit };

const char* h_kind_name(HKind h);
/// piecewise-paper or log-weight; anything else is a ParameterError.
HKind parse_h_kind(const std::string& name);

/// piecewise: |x|^2 inside the unit ball, 1 outside. log-weight:
/// (-log(|x| / D))^{-2(N-1)/(N-2)} inside the unit ball with D = e, 0 outside.
/// unit: 1.
double h_weight(HKind h, double r, int N);

/// int h |phi|^{2*} dx for phi = T(v).
double ihs_rhs_integral(const Field& v, int N, HKind h);
/// |phi|_H / (int h |phi|^{2*})^{1/2*} with phi = T(v).
double ihs_ratio(const Field& v, int N, HKind h);

/// Ratios over random bump fields, each with an added c e^{-r^2} component
/// so that phi keeps the |x|^{-(N-2)/2} singularity. empirical_constant is
/// the minimum ratio; passes when it is finite and strictly positive.
InequalityReport check_ihs(int sample_count, std::uint64_t seed, int N, HKind h,
                           const GridPtr& grid);

struct RefinementReport {
  InequalityReport coarse;
  InequalityReport fine;
  double change = 0.0;  // max(a/b, b/a) of the empirical constants
  bool pass = false;    // both pass and change < 2
};

RefinementReport compare_refinement(InequalityReport coarse, InequalityReport fine);

}  // namespace hardynls
