"""Radial standing waves with a critical inverse-square potential."""

from ._hardynls import (
    ConvergenceError,
    Error,
    Grid,
    ParameterError,
    Params,
    StandingWave,
    __version__,
    check_ckn,
    check_hardy,
    check_ihs,
    check_weight,
    config_hash,
    energy,
    evolve,
    free_gaussian,
    ground_state,
    hardy_functional,
    mass_mu,
    orbit_distance,
    run,
    stability,
    to_u,
    to_v,
    verify_kelvin,
)

__all__ = [
    "ConvergenceError",
    "Error",
    "Grid",
    "ParameterError",
    "Params",
    "StandingWave",
    "__version__",
    "check_ckn",
    "check_hardy",
    "check_ihs",
    "check_weight",
    "config_hash",
    "energy",
    "evolve",
    "free_gaussian",
    "ground_state",
    "hardy_functional",
    "mass_mu",
    "orbit_distance",
    "run",
    "stability",
    "to_u",
    "to_v",
    "verify_kelvin",
]
