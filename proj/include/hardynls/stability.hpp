#pragma once

#include <string>
#include <vector>

#include "hardynls/evolution.hpp"
#include "hardynls/ground_state.hpp"

namespace hardynls {

enum class Perturbation { RadialBump, PhaseRamp, Dilation };

const char* perturbation_name(Perturbation p);
/// Accepts radial-bump, phase-ramp, mass-preserving-deformation.
Perturbation parse_perturbation(const std::string& name);

struct StabilityRun {
  double delta = 0.0;
  Perturbation kind = Perturbation::RadialBump;
  double initial_distance = 0.0;
  std::vector<double> times;
  std::vector<double> distances;
  std::vector<double> charge_drift;  // relative to the initial charge
  std::vector<double> energy_drift;  // relative to |initial energy|
  double max_distance = 0.0;
  /// max_distance / delta (0 when delta = 0).
  double ratio() const { return delta > 0 ? max_distance / delta : 0.0; }
};

double h_norm(const Field& v, int N);

/// min over theta of |v - e^{i theta} v_gamma|_H. The minimizer is the
/// argument of <v, v_gamma>_H; the distance is then evaluated directly.
double orbit_distance(const Field& v, const StandingWave& sw, int N);

/// Standing wave perturbed along one of three families and rescaled to mass
/// gamma, with the family amplitude chosen by bisection so that the orbit
/// distance of the result is delta.
///   radial-bump:  v + s exp(-(r - 2)^2 / 2)
///   phase-ramp:   v exp(i s r)
///   mass-preserving-deformation: (1 + s) v((1 + s) r)
Field perturb(const StandingWave& sw, const Params& params, double delta, Perturbation kind);

/// Perturbs sw, evolves to time T with step dt and records the orbit distance
/// and the conservation drifts at >= 101 uniformly spaced times.
StabilityRun stability_experiment(const Params& params, const StandingWave& sw, double delta,
                                  Perturbation kind, double T, double dt,
                                  const EvolutionOptions& opt = {});

}  // namespace hardynls
