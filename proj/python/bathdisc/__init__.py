"""Gauss-quadrature bath discretisation, dynamical error bounds and planning."""

from ._core import (
    ChainCoefficients,
    DiscretizedBath,
    NumericalError,
    SpectralDensity,
    ValidationError,
    bound,
    chain_coefficients,
    chain_to_star,
    chebyshev_knots_closed_form,
    discretize,
    eta_constants,
    evolve_spin_boson,
    gamma_basis_change,
    gamma_norm_number_state,
    gauss_rule,
    plan_modes,
)

__all__ = [
    "ChainCoefficients",
    "DiscretizedBath",
    "NumericalError",
    "SpectralDensity",
    "ValidationError",
    "bound",
    "chain_coefficients",
    "chain_to_star",
    "chebyshev_knots_closed_form",
    "discretize",
    "eta_constants",
    "evolve_spin_boson",
    "gamma_basis_change",
    "gamma_norm_number_state",
    "gauss_rule",
    "plan_modes",
]
