"""Exact spectrum of the uncoupled case (a = b = 0).

With both couplings off, the ansatz F = rho^s exp(-rho^2/2) sum_j c_j rho^(2j)
turns the radial equation into a two-term recurrence.  For arbitrary W the
series does not terminate and the solution is not square-integrable; the
eigenvalues are exactly the W for which the series truncates to a polynomial:

    W = 2(2*nu + |gamma| + 1),   nu = 0, 1, ...

Coefficients are carried as exact rationals so that truncation (c_{nu+1} = 0)
is an identity, not a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._rational import RationalLike, as_fraction, half_odd_exponent
from .core import PolynomialSolution

__all__ = [
    "ExactState",
    "exact_eigenvalue",
    "exact_state",
    "general_series_coefficients",
]


def exact_eigenvalue(nu: int, gamma: RationalLike):
    """Eigenvalue 2(2*nu + |gamma| + 1) of the a = b = 0 problem.

    Exact in the type of ``gamma``: float in, float out; Fraction in,
    Fraction out.
    """
    if nu < 0:
        raise ValueError(f"radial index must be >= 0, got {nu}")
    return 2 * (2 * nu + abs(gamma) + 1)


def general_series_coefficients(W: RationalLike, gamma: RationalLike, count: int) -> list[Fraction]:
    """First ``count`` series coefficients for an arbitrary trial W.

    c_{j+1} = (4j + 2s - W + 1) / (2 (j+1) (2j + 2s + 1)) * c_j,  c_0 = 1.

    Off the spectrum all coefficients stay nonzero (the series never
    terminates); at W = 2(2*nu + |gamma| + 1) the factor vanishes at j = nu
    and every later coefficient is exactly zero.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    s = half_odd_exponent(gamma)
    w = as_fraction(W)
    coeffs = [Fraction(1)]
    for j in range(count - 1):
        factor = (4 * j + 2 * s - w + 1) / (2 * (j + 1) * (2 * j + 2 * s + 1))
        coeffs.append(factor * coeffs[j])
    return coeffs


@dataclass(frozen=True)
class ExactState:
    """Polynomial eigenfunction of the uncoupled problem.

    ``coefficients`` holds the exact rational series coefficients
    c_0 .. c_nu; ``solution`` is the float packaging (step = 2, no linear
    term in the exponent) suitable for grid evaluation.
    """

    nu: int
    gamma: float
    W: float
    coefficients: tuple[Fraction, ...]
    solution: PolynomialSolution


def exact_state(nu: int, gamma: RationalLike) -> ExactState:
    """Build the nu-th eigenstate from the terminating recurrence.

    c_{j+1} = 2(j - nu) / ((j+1)(2j + 2s + 1)) * c_j from c_0 = 1; the
    numerator kills the series at j = nu, so the polynomial has degree nu
    in rho^2.
    """
    if nu < 0:
        raise ValueError(f"radial index must be >= 0, got {nu}")
    s = half_odd_exponent(gamma)
    coeffs = [Fraction(1)]
    for j in range(nu):
        coeffs.append(Fraction(2 * (j - nu)) / ((j + 1) * (2 * j + 2 * s + 1)) * coeffs[j])
    w = exact_eigenvalue(nu, gamma)
    solution = PolynomialSolution(
        s=float(s),
        b_half=0.0,
        coeffs=tuple(float(c) for c in coeffs),
        W=float(w),
        step=2,
    )
    return ExactState(
        nu=nu,
        gamma=float(gamma),
        W=float(w),
        coefficients=tuple(coeffs),
        solution=solution,
    )
