"""Periodic-grid Maxwell dynamics and its symplectic thickening."""

from .dynamics import (
    ConstraintError,
    ExtendedState,
    GaugeChoice,
    Integrator,
    MaxwellState,
    energy,
    evolve,
    gauss_residual,
    maxwell_rhs,
    project_gauss,
    step_leapfrog,
)
from .embedding import (
    GaugeReport,
    StationarityReport,
    SymplecticSample,
    action_stationarity,
    canonical_pair,
    discrete_action,
    flow_preserves_form,
    gauge_compare,
    gauge_pair,
    leapfrog_trajectory,
    mixed_pair,
    presymplectic_product,
    symplectic_product,
)
from .grid import ConfigurationError, GridSpec, helmholtz_project, spectral_operator
from .initial import (
    load_snapshot,
    parse_gauge,
    parse_initial,
    random_state,
    save_snapshot,
    standing_wave,
    standing_wave_exact,
)

__all__ = [
    "action_stationarity",
    "canonical_pair",
    "ConfigurationError",
    "ConstraintError",
    "discrete_action",
    "energy",
    "evolve",
    "ExtendedState",
    "flow_preserves_form",
    "gauge_compare",
    "gauge_pair",
    "GaugeChoice",
    "GaugeReport",
    "gauss_residual",
    "GridSpec",
    "helmholtz_project",
    "Integrator",
    "leapfrog_trajectory",
    "load_snapshot",
    "maxwell_rhs",
    "MaxwellState",
    "mixed_pair",
    "parse_gauge",
    "parse_initial",
    "presymplectic_product",
    "project_gauss",
    "random_state",
    "save_snapshot",
    "spectral_operator",
    "standing_wave",
    "standing_wave_exact",
    "StationarityReport",
    "step_leapfrog",
    "symplectic_product",
    "SymplecticSample",
]
