"""Spectral splitting solver for the scaled Pauli equation.

States are pairs of complex arrays ``(u1, u2)`` shaped like the grid, indexed
``u[j1, j2, j3]``.
"""

from ._core import (
    ConfigError,
    DivergenceError,
    EvaluationError,
    Fields,
    Grid,
    InvalidArgument,
    StateError,
    alpha_norm,
    component_l2,
    convergence_study,
    current_density,
    density,
    evolve,
    exact_evolve,
    field_preset,
    initial_state,
    run,
    state_error,
    total_energy,
    total_mass,
    uniform_fields,
    uniform_magnetic,
    validate,
)

__all__ = [
    "ConfigError",
    "DivergenceError",
    "EvaluationError",
    "Fields",
    "Grid",
    "InvalidArgument",
    "StateError",
    "alpha_norm",
    "component_l2",
    "convergence_study",
    "current_density",
    "density",
    "evolve",
    "exact_evolve",
    "field_preset",
    "initial_state",
    "run",
    "state_error",
    "total_energy",
    "total_mass",
    "uniform_fields",
    "uniform_magnetic",
    "validate",
]
