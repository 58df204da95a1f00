"""Shared domain types for the canonical radial eigenvalue equation.

Everything in this package revolves around

    F''(rho) + [W + (1/4 - gamma^2)/rho^2 - rho^2 - a/rho - b*rho] F(rho) = 0

on (0, inf), with F(0) = 0 and F square-integrable.  The closed-form
machinery in :mod:`radqes.exact` and :mod:`radqes.conditional` produces
:class:`PolynomialSolution` candidates; :func:`ode_residual` substitutes any
candidate back into the equation, so every analytic claim can be checked
against the equation itself rather than against its own derivation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npp

__all__ = [
    "ConsistencyError",
    "GridFunction",
    "PolynomialSolution",
    "RadialProblem",
    "count_nodes",
    "default_residual_grid",
    "exponent",
    "ode_residual",
    "quadrature",
]


class ConsistencyError(RuntimeError):
    """An internal numerical invariant failed.

    Raised when the library contradicts itself (e.g. a truncation condition
    that must vanish does not); signals an implementation or conditioning
    problem, never bad user input.
    """


@dataclass(frozen=True)
class RadialProblem:
    """Parameter triple (gamma, a, b) of the canonical radial equation.

    ``gamma`` controls the inverse-square term, ``a`` the Coulomb term and
    ``b`` the linear term.  Any real values are accepted; the indicial
    exponent ``s = |gamma| + 1/2 >= 1/2`` keeps F(0) = 0 for all of them.
    The problem is exactly solvable iff ``a == b == 0``; otherwise only
    isolated polynomial solutions exist (see :mod:`radqes.conditional`).
    """

    gamma: float
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        for name in ("gamma", "a", "b"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite, got {getattr(self, name)!r}")

    @property
    def s(self) -> float:
        """Indicial exponent |gamma| + 1/2 of the rho -> 0 behaviour."""
        return abs(self.gamma) + 0.5

    @property
    def is_exactly_solvable(self) -> bool:
        return self.a == 0.0 and self.b == 0.0


def exponent(problem: RadialProblem) -> float:
    """Leading power s = |gamma| + 1/2 of F near the origin."""
    return problem.s


@dataclass(frozen=True)
class PolynomialSolution:
    """Candidate eigenfunction in factored form.

    F(rho) = rho^s * exp(-b_half*rho - rho^2/2) * sum_j coeffs[j] * rho^(step*j)

    ``step`` is the stride of the series powers: 2 for the even series of the
    uncoupled case, 1 for the general one.  The series is normalised to
    ``coeffs[0] == 1``; eigenfunctions are never L2-normalised here.
    """

    s: float
    b_half: float
    coeffs: tuple[float, ...]
    W: float
    step: int = 1

    def __post_init__(self) -> None:
        if self.step not in (1, 2):
            raise ValueError(f"step must be 1 or 2, got {self.step}")
        if not self.coeffs:
            raise ValueError("coefficient list must not be empty")
        if self.coeffs[0] != 1.0:
            raise ValueError("series is normalised to c_0 = 1")

    @property
    def degree(self) -> int:
        """Degree of the polynomial factor in rho."""
        return self.step * (len(self.coeffs) - 1)

    def dense_coeffs(self) -> np.ndarray:
        """Series coefficients re-indexed to plain powers of rho."""
        dense = np.zeros(self.degree + 1)
        dense[:: self.step] = self.coeffs
        return dense

    def prefactor(self, rho: np.ndarray) -> np.ndarray:
        return rho**self.s * np.exp(-self.b_half * rho - 0.5 * rho * rho)

    def evaluate(self, rho) -> np.ndarray:
        """Sample F(rho) on strictly positive points."""
        rho = _positive_grid(rho)
        return self.prefactor(rho) * npp.polyval(rho, self.dense_coeffs())

    def sample(self, rho) -> "GridFunction":
        rho = _positive_grid(rho)
        return GridFunction.from_samples(rho, self.evaluate(rho))


def _positive_grid(rho) -> np.ndarray:
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if rho.size == 0:
        raise ValueError("grid must contain at least one point")
    if np.any(rho <= 0.0):
        raise ValueError("grid points must be strictly positive")
    return rho


def default_residual_grid(num: int = 200, lo: float = 1e-3, hi: float = 8.0) -> np.ndarray:
    """Log-spaced grid covering both the rho^s layer and the Gaussian tail."""
    return np.geomspace(lo, hi, num)


def ode_residual(solution: PolynomialSolution, problem: RadialProblem, grid) -> float:
    """Largest absolute residual of the canonical equation over ``grid``.

    The ansatz is differentiated in closed form (product rule on the
    prefactor, term-by-term on the polynomial); no finite differencing is
    involved, so the returned number measures only how far ``solution`` is
    from solving the equation with the parameters in ``problem``.
    """
    rho = _positive_grid(grid)
    dense = solution.dense_coeffs()
    p = npp.polyval(rho, dense)
    dp = npp.polyval(rho, npp.polyder(dense)) if dense.size > 1 else np.zeros_like(rho)
    d2p = npp.polyval(rho, npp.polyder(dense, 2)) if dense.size > 2 else np.zeros_like(rho)

    # log-derivative of the prefactor and its derivative
    u = solution.s / rho - solution.b_half - rho
    du = -solution.s / rho**2 - 1.0

    v = (
        solution.W
        + (0.25 - problem.gamma**2) / rho**2
        - rho**2
        - problem.a / rho
        - problem.b * rho
    )
    bracket = (du + u * u + v) * p + 2.0 * u * dp + d2p
    return float(np.max(np.abs(solution.prefactor(rho) * bracket)))


def quadrature(nodes: np.ndarray, values: np.ndarray) -> float:
    """Trapezoidal integral over [0, nodes[-1]] with an implicit zero at 0.

    The origin is not a sample point (the equation is singular there); the
    integrand is anchored to zero at rho = 0, consistent with F(0) = 0.
    """
    dx = np.diff(np.concatenate(([0.0], nodes)))
    pair = np.concatenate(([0.0], values))
    return float(np.sum(0.5 * dx * (pair[1:] + pair[:-1])))


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real function sampled on a strictly increasing grid in (0, rho_max].

    ``norm`` is the L2 norm under the trapezoidal weight of
    :func:`quadrature`.  Instances are immutable; the sample arrays are
    marked read-only.
    """

    nodes: np.ndarray
    values: np.ndarray
    norm: float

    @classmethod
    def from_samples(cls, nodes, values) -> "GridFunction":
        nodes = np.asarray(nodes, dtype=float).copy()
        values = np.asarray(values, dtype=float).copy()
        if nodes.ndim != 1 or nodes.shape != values.shape:
            raise ValueError("nodes and values must be 1-d arrays of equal length")
        if nodes.size == 0:
            raise ValueError("empty grid")
        if nodes[0] <= 0.0 or np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly increasing and positive")
        nodes.setflags(write=False)
        values.setflags(write=False)
        norm = math.sqrt(quadrature(nodes, values * values))
        return cls(nodes=nodes, values=values, norm=norm)

    def normalized(self) -> "GridFunction":
        """Rescale to unit L2 norm (within roundoff)."""
        if self.norm <= 0.0:
            raise ValueError("cannot normalise a zero function")
        return GridFunction.from_samples(self.nodes, self.values / self.norm)


def count_nodes(f: GridFunction, rel_tol: float = 1e-12) -> int:
    """Number of strict sign changes of the sampled values.

    Samples with magnitude below ``rel_tol * max|values|`` are treated as
    exact zeros, and a zero inherits the previous sign, so a grid-aligned
    root is counted once and eigensolver noise in far tails is ignored.
    The implicit zero endpoints at rho = 0 and beyond the grid do not count.
    """
    v = np.asarray(f.values, dtype=float)
    peak = float(np.max(np.abs(v))) if v.size else 0.0
    if peak == 0.0:
        return 0
    sgn = np.sign(np.where(np.abs(v) < rel_tol * peak, 0.0, v))
    last = 0.0
    changes = 0
    for t in sgn:
        if t == 0.0:
            continue
        if last != 0.0 and t != last:
            changes += 1
        last = t
    return changes
