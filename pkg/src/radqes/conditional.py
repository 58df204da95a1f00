"""Conditionally-solvable machinery for nonzero Coulomb/linear couplings.

With a or b nonzero the ansatz

    F = rho^s exp(-(b/2) rho - rho^2/2) sum_j c_j rho^j

yields a three-term recurrence

    c_{j+2} = A_j c_{j+1} + B_j c_j,   c_{-1} = 0, c_0 = 1,
    A_j = (a + b(j+s+1)) / ((j+2)(j+2s+1)),
    B_j = (4(2j+2s-W+1) - b^2) / (4 (j+2)(j+2s+1)).

A degree-n polynomial needs two conditions: B_n = 0 fixes the termination
energy W^(n) = 2(n+|gamma|+1) - b^2/4, and c_{n+1}(a, b) = 0 restricts the
couplings themselves.  For fixed (gamma, b) the second condition is a
degree-(n+1) polynomial in a with n+1 real roots; each root carries one
polynomial solution.  W^(n) is an eigenvalue only on those roots -- it is
a-independent by construction, while true eigenvalues must grow with a
(Hellmann-Feynman), which is why the closed form cannot be a spectrum.

Coefficient polynomials are built in exact rational arithmetic; root
extraction is floating point (companion matrix + Newton polish).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as npp

from ._rational import RationalLike, as_fraction, half_odd_exponent
from .core import ConsistencyError, PolynomialSolution

__all__ = [
    "ClosedFormCheck",
    "CoefficientPolynomial",
    "ConditionalFamily",
    "RecurrenceCoeffs",
    "admissible_a",
    "closed_form_check_n01",
    "coefficient_polynomial",
    "conditional_family",
    "recurrence_step",
    "termination_B",
    "termination_energy",
]

# Root handling thresholds (documented library conventions):
# imaginary parts below IMAG_TOL*(1+|root|) are zeroed, larger ones are an
# internal consistency failure; roots closer than ROOT_SEPARATION are
# reported as a multiplicity warning but kept distinct.
IMAG_TOL = 1e-9
ROOT_SEPARATION = 1e-8
_TRUNCATION_TOL = 1e-9


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """One step (A_j, B_j) of the three-term recurrence."""

    A: float
    B: float


def recurrence_step(j: int, s: float, a: float, b: float, W: float) -> RecurrenceCoeffs:
    """Recurrence coefficients at index j (valid for j >= -1 when s >= 1/2)."""
    if j < -1:
        raise ValueError(f"recurrence index must be >= -1, got {j}")
    den = (j + 2) * (j + 2 * s + 1)
    A = (a + b * (j + s + 1)) / den
    B = (4 * (2 * j + 2 * s - W + 1) - b * b) / (4 * den)
    return RecurrenceCoeffs(A=A, B=B)


def termination_energy(n: int, gamma: float, b: float) -> float:
    """Energy W^(n) = 2(n + |gamma| + 1) - b^2/4 that makes B_n vanish."""
    if n < 0:
        raise ValueError(f"polynomial degree must be >= 0, got {n}")
    return 2 * (n + abs(gamma) + 1) - b * b / 4


def termination_B(j: int, n: int, s: float) -> float:
    """B_j at W = W^(n): reduces to 2(j-n)/((j+2)(j+2s+1)), independent of a and b."""
    if j < -1:
        raise ValueError(f"recurrence index must be >= -1, got {j}")
    return 2 * (j - n) / ((j + 2) * (j + 2 * s + 1))


# ---------------------------------------------------------------------------
# exact polynomial in the Coulomb coupling

def _poly_add(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


@dataclass(frozen=True)
class CoefficientPolynomial:
    """The truncation coefficient c_{n+1} as an exact polynomial in a.

    ``poly`` lists rational coefficients in ascending powers of a; the degree
    is n+1 with a nonzero leading coefficient.
    """

    n: int
    gamma: Fraction
    b: Fraction
    poly: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def as_floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.poly])

    def __call__(self, a: float) -> float:
        return float(npp.polyval(a, self.as_floats()))


def coefficient_polynomial(n: int, gamma: RationalLike, b: RationalLike) -> CoefficientPolynomial:
    """Build c_{n+1}(a) exactly by running the recurrence at W = W^(n).

    ``gamma`` and ``b`` are taken at their exact rational values (floats via
    their binary expansion), so the returned coefficients carry no roundoff.
    """
    if n < 0:
        raise ValueError(f"polynomial degree must be >= 0, got {n}")
    s = half_odd_exponent(gamma)
    bq = as_fraction(b)
    w = 2 * n + 2 * s + 1 - bq * bq / 4

    # cs[k] = c_k as a coefficient list in ascending powers of a; c_{-1} = 0.
    cs: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, n + 2):
        j = k - 2
        den = (j + 2) * (j + 2 * s + 1)
        beta = bq * (j + s + 1)
        bj = (4 * (2 * j + 2 * s - w + 1) - bq * bq) / (4 * den)
        prev = cs[k - 1]
        # (a + beta)/den * c_{k-1}
        term = [Fraction(0)] * (len(prev) + 1)
        for i, c in enumerate(prev):
            term[i + 1] += c / den
            term[i] += beta * c / den
        if k >= 2:
            term = _poly_add(term, [bj * c for c in cs[k - 2]])
        cs.append(term)

    poly = cs[n + 1]
    if len(poly) != n + 2 or poly[-1] == 0:
        raise ConsistencyError(
            f"truncation coefficient for n={n} should have degree {n + 1} in a"
        )
    return CoefficientPolynomial(n=n, gamma=as_fraction(gamma), b=bq, poly=tuple(poly))


def _polish_root(poly: np.ndarray, dpoly: np.ndarray, x: float, scale: float) -> float:
    # Newton refinement; companion-matrix roots are good starts, so a few
    # steps reach residuals at the coefficient-roundoff floor.
    for _ in range(50):
        px = float(npp.polyval(x, poly))
        if abs(px) <= 1e-14 * scale:
            break
        dpx = float(npp.polyval(x, dpoly))
        if dpx == 0.0:
            break
        step = px / dpx
        x -= step
        if abs(step) <= 1e-16 * (1.0 + abs(x)):
            break
    return x


def admissible_a(n: int, gamma: RationalLike, b: RationalLike) -> np.ndarray:
    """All n+1 real roots of c_{n+1}(a) = 0, sorted descending.

    Descending order fixes the family index: the first root carries the
    nodeless member, the last the most excited one.  Roots with imaginary
    part above the realness tolerance raise :class:`ConsistencyError`.
    """
    cp = coefficient_polynomial(n, gamma, b)
    coeffs = cp.as_floats()
    # scale out the leading coefficient before companion-matrix rooting
    roots = npp.polyroots(coeffs / coeffs[-1])
    if np.any(np.abs(roots.imag) > IMAG_TOL * (1.0 + np.abs(roots))):
        raise ConsistencyError(
            f"complex root of the truncation condition at n={n}, gamma={gamma}, b={b}: {roots}"
        )
    real = np.real(roots)
    dpoly = npp.polyder(coeffs)
    scale = float(np.max(np.abs(coeffs)))
    polished = np.array(
        [
            _polish_root(coeffs, dpoly, float(r), scale * max(1.0, abs(r)) ** cp.degree)
            for r in real
        ]
    )
    polished = np.sort(polished)[::-1]
    if polished.size != n + 1:
        raise ConsistencyError(
            f"expected {n + 1} admissible roots at n={n}, got {polished.size}"
        )
    return polished


def _multiplicity_warnings(roots: np.ndarray) -> tuple[str, ...]:
    notes = []
    for lo, hi in zip(roots[1:], roots[:-1]):
        if hi - lo <= ROOT_SEPARATION:
            notes.append(
                f"roots {hi!r} and {lo!r} closer than {ROOT_SEPARATION:g}; treating as a multiplicity"
            )
    return tuple(notes)


@dataclass(frozen=True)
class ConditionalFamily:
    """Termination energy plus all polynomial solutions for fixed (n, gamma, b).

    ``roots`` are the admissible Coulomb couplings in descending order;
    ``solutions[i]`` solves the equation with a = roots[i] and W = W^(n).
    """

    n: int
    gamma: float
    b: float
    W: float
    roots: tuple[float, ...]
    solutions: tuple[PolynomialSolution, ...]
    warnings: tuple[str, ...] = ()


def _series(s: float, a: float, b: float, W: float, count: int) -> list[float]:
    """Float run of the recurrence: c_0 .. c_count."""
    c = [1.0, recurrence_step(-1, s, a, b, W).A]
    for j in range(count - 1):
        step = recurrence_step(j, s, a, b, W)
        c.append(step.A * c[j + 1] + step.B * c[j])
    return c[: count + 1]


def conditional_family(n: int, gamma: float, b: float) -> ConditionalFamily:
    """Assemble the full solution family at the termination energy.

    For each admissible root the recurrence is re-run numerically; the two
    trailing coefficients c_{n+1}, c_{n+2} must vanish to roundoff, which
    cross-checks the root against the recurrence it came from.
    """
    s = abs(gamma) + 0.5
    w = termination_energy(n, gamma, b)
    roots = admissible_a(n, gamma, b)
    solutions = []
    for a in roots:
        c = _series(s, float(a), b, w, n + 2)
        tol = _TRUNCATION_TOL * max(1.0, max(abs(x) for x in c[: n + 1]))
        if abs(c[n + 1]) > tol or abs(c[n + 2]) > tol:
            raise ConsistencyError(
                f"series at admissible root a={a} does not truncate: "
                f"c_{n + 1}={c[n + 1]:.3e}, c_{n + 2}={c[n + 2]:.3e}"
            )
        solutions.append(
            PolynomialSolution(
                s=s, b_half=b / 2.0, coeffs=tuple(c[: n + 1]), W=w, step=1
            )
        )
    return ConditionalFamily(
        n=n,
        gamma=gamma,
        b=b,
        W=w,
        roots=tuple(float(r) for r in roots),
        solutions=tuple(solutions),
        warnings=_multiplicity_warnings(roots),
    )


# ---------------------------------------------------------------------------
# closed forms for n = 0 and n = 1

@dataclass(frozen=True)
class ClosedFormCheck:
    """Recurrence pipeline vs. hand closed forms for n = 0, 1.

    All comparisons are absolute errors against:
      n=0: a = -b s, coefficients (1,)
      n=1: 4s(2s+1) c_2 = a^2 + a b (2s+1) + b^2 s(s+1) - 4s, roots
           ( +sqrt(b^2+16s) - b(2s+1) )/2 and -( sqrt(b^2+16s) + b(2s+1) )/2,
           first coefficient +-( sqrt(b^2+16s) -+ b )/(4s).
    ``quadratic_exact`` compares the rational polynomial coefficient-wise
    with no tolerance at all.
    """

    gamma: float
    b: float
    tolerance: float
    n0_root_error: float
    n1_root_error: float
    n1_coeff_error: float
    quadratic_exact: bool

    @property
    def ok(self) -> bool:
        return (
            self.quadratic_exact
            and self.n0_root_error <= self.tolerance
            and self.n1_root_error <= self.tolerance
            and self.n1_coeff_error <= self.tolerance
        )

    def __bool__(self) -> bool:
        return self.ok


def closed_form_check_n01(gamma: float, b: float, tolerance: float = 1e-12) -> ClosedFormCheck:
    """Compare the generic machinery against the explicit n = 0, 1 formulas."""
    s = abs(gamma) + 0.5

    fam0 = conditional_family(0, gamma, b)
    n0_err = abs(fam0.roots[0] - (-b * s))
    if fam0.solutions[0].coeffs != (1.0,):
        n0_err = math.inf

    root = math.sqrt(b * b + 16 * s)
    expected_roots = ((root - b * (2 * s + 1)) / 2, -(root + b * (2 * s + 1)) / 2)
    expected_c1 = ((root - b) / (4 * s), -(root + b) / (4 * s))
    fam1 = conditional_family(1, gamma, b)
    n1_root_err = max(abs(got - want) for got, want in zip(fam1.roots, expected_roots))
    n1_coeff_err = max(
        abs(sol.coeffs[1] - want) for sol, want in zip(fam1.solutions, expected_c1)
    )

    sq = half_odd_exponent(gamma)
    bq = as_fraction(b)
    denom = 4 * sq * (2 * sq + 1)
    expected_poly = (
        (bq * bq * sq * (sq + 1) - 4 * sq) / denom,
        bq * (2 * sq + 1) / denom,
        1 / denom,
    )
    quadratic_exact = coefficient_polynomial(1, gamma, b).poly == expected_poly

    return ClosedFormCheck(
        gamma=gamma,
        b=b,
        tolerance=tolerance,
        n0_root_error=n0_err,
        n1_root_error=n1_root_err,
        n1_coeff_error=n1_coeff_err,
        quadratic_exact=quadratic_exact,
    )
