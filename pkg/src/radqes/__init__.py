"""Radial oscillator with Coulomb and linear couplings: closed forms vs. numerics.

The canonical eigenvalue equation

    F''(rho) + [W + (1/4 - gamma^2)/rho^2 - rho^2 - a/rho - b*rho] F(rho) = 0

is exactly solvable only for a = b = 0 (:mod:`radqes.exact`).  For nonzero
couplings it is conditionally solvable: polynomial solutions exist only on
the parameter constraints computed in :mod:`radqes.conditional`, and the
associated termination energies are not a spectrum.  :mod:`radqes.oracle`
provides an independent finite-difference eigensolver and Hellmann-Feynman
checks, and :mod:`radqes.models` applies the whole toolkit to three radial
models whose published closed-form spectra fail those tests.
"""

from .conditional import (
    ClosedFormCheck,
    CoefficientPolynomial,
    ConditionalFamily,
    RecurrenceCoeffs,
    admissible_a,
    closed_form_check_n01,
    coefficient_polynomial,
    conditional_family,
    recurrence_step,
    termination_B,
    termination_energy,
)
from .core import (
    ConsistencyError,
    GridFunction,
    PolynomialSolution,
    RadialProblem,
    count_nodes,
    default_residual_grid,
    exponent,
    ode_residual,
    quadrature,
)
from .exact import ExactState, exact_eigenvalue, exact_state, general_series_coefficients
from .models import (
    ConfinedPdmModel,
    KgOscillatorModel,
    PseudoConfinedModel,
    RefutationReport,
    claimed_energy,
    claimed_hft_partials,
    model_from_dict,
    model_to_dict,
    refute,
    to_canonical,
)
from .oracle import (
    HftReport,
    OracleConfig,
    SpectrumComparison,
    SpectrumEstimate,
    expectation,
    hft_check,
    solve_spectrum,
    spectrum_vs_formula,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedFormCheck",
    "CoefficientPolynomial",
    "ConditionalFamily",
    "ConfinedPdmModel",
    "ConsistencyError",
    "ExactState",
    "GridFunction",
    "HftReport",
    "KgOscillatorModel",
    "OracleConfig",
    "PolynomialSolution",
    "PseudoConfinedModel",
    "RadialProblem",
    "RecurrenceCoeffs",
    "RefutationReport",
    "SpectrumComparison",
    "SpectrumEstimate",
    "admissible_a",
    "claimed_energy",
    "claimed_hft_partials",
    "closed_form_check_n01",
    "coefficient_polynomial",
    "conditional_family",
    "count_nodes",
    "default_residual_grid",
    "exact_eigenvalue",
    "exact_state",
    "expectation",
    "exponent",
    "general_series_coefficients",
    "hft_check",
    "model_from_dict",
    "model_to_dict",
    "ode_residual",
    "quadrature",
    "recurrence_step",
    "refute",
    "solve_spectrum",
    "spectrum_vs_formula",
    "termination_B",
    "termination_energy",
    "to_canonical",
]
