#include "hardynls/stability.hpp"

#include <algorithm>
#include <cmath>

#include "hardynls/errors.hpp"

namespace hardynls {

using cplx = std::complex<double>;

const char* perturbation_name(Perturbation p) {
  switch (p) {
    case Perturbation::RadialBump: return "radial-bump";
    case Perturbation::PhaseRamp: return "phase-ramp";
    case Perturbation::Dilation: return "mass-preserving-deformation";
  }
  return "radial-bump";
}

Perturbation parse_perturbation(const std::string& name) {
  if (name == "radial-bump") return Perturbation::RadialBump;
  if (name == "phase-ramp") return Perturbation::PhaseRamp;
  if (name == "mass-preserving-deformation") return Perturbation::Dilation;
  throw ParameterError("unknown perturbation '" + name + "'");
}

double h_norm(const Field& v, int N) { return std::sqrt(std::max(0.0, h_inner(v, v, N).real())); }

double orbit_distance(const Field& v, const StandingWave& sw, int N) {
  require_same_grid(v, sw.v);
  const cplx ip = h_inner(v, sw.v, N);
  const cplx rot = std::abs(ip) > 0.0 ? ip / std::abs(ip) : cplx(1.0, 0.0);
  std::vector<cplx> diff(v.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = v[i] - rot * sw.v[i];
  return h_norm(Field(v.grid(), std::move(diff)), N);
}

namespace {

Field apply_family(const StandingWave& sw, const Params& params, double s, Perturbation kind) {
  const auto& g = *sw.v.grid();
  const auto& r = g.nodes();
  const auto base = sw.v.real_part();
  std::vector<cplx> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    switch (kind) {
      case Perturbation::RadialBump:
        out[i] = base[i] + s * std::exp(-0.5 * (r[i] - 2.0) * (r[i] - 2.0));
        break;
      case Perturbation::PhaseRamp:
        out[i] = base[i] * std::polar(1.0, s * r[i]);
        break;
      case Perturbation::Dilation: {
        const double x = std::clamp((1.0 + s) * r[i], g.r_min(), g.r_max());
        out[i] = (1.0 + s) * g.interpolate(base, x);
        break;
      }
    }
  }
  out.back() = 0.0;
  const Discretization d(sw.v.grid(), params);
  const double m = d.mass(out);
  if (!(m > 0.0)) throw DegenerateInputError("perturbation annihilated the mass");
  const double k = std::sqrt(params.gamma / m);
  for (auto& z : out) z *= k;
  return Field(sw.v.grid(), std::move(out));
}

}  // namespace

Field perturb(const StandingWave& sw, const Params& params, double delta, Perturbation kind) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ParameterError("delta must be a nonnegative number");
  }
  const int N = params.N;
  if (delta == 0.0) return apply_family(sw, params, 0.0, kind);
  auto dist = [&](double s) { return orbit_distance(apply_family(sw, params, s, kind), sw, N); };
  double lo = 0.0;
  double hi = kind == Perturbation::Dilation ? 1e-3 : delta;
  int grow = 0;
  while (dist(hi) < delta) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 60 || (kind == Perturbation::Dilation && hi > 0.5)) {
      throw DomainError("perturbation family cannot reach the requested delta");
    }
  }
  for (int k = 0; k < 100 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (dist(mid) < delta ? lo : hi) = mid;
  }
  return apply_family(sw, params, 0.5 * (lo + hi), kind);
}

StabilityRun stability_experiment(const Params& params, const StandingWave& sw, double delta,
                                  Perturbation kind, double T, double dt,
                                  const EvolutionOptions& opt) {
  if (!(T > 0.0) || !(dt > 0.0) || dt > T) throw ParameterError("need 0 < dt <= T");
  const long steps_l = std::lround(T / dt);
  if (steps_l < 100 || steps_l > 100000000) {
    throw ParameterError("T / dt must give at least 100 steps");
  }
  const int steps = static_cast<int>(steps_l);
  const int every = std::max(1, steps / 100);

  StabilityRun run;
  run.delta = delta;
  run.kind = kind;
  const EvolutionState s0 = make_state(perturb(sw, params, delta, kind), params, opt.nonlinear);
  const double e_scale = std::abs(s0.energy0) > 0 ? std::abs(s0.energy0) : 1.0;
  auto record = [&](const EvolutionState& s) {
    const auto [charge, energy] = invariants(s, params, opt.nonlinear);
    run.times.push_back(s.time);
    run.distances.push_back(orbit_distance(s.v, sw, params.N));
    run.charge_drift.push_back((charge - s0.charge0) / s0.charge0);
    run.energy_drift.push_back((energy - s0.energy0) / e_scale);
  };
  propagate(s0, params, dt, steps, opt, record, every);
  run.initial_distance = run.distances.front();
  run.max_distance = *std::max_element(run.distances.begin(), run.distances.end());
  return run;
}

}  // namespace hardynls
