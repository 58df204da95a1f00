"""Exact rational arithmetic helpers.

Termination identities (series coefficients that must vanish exactly) are
checked in :class:`fractions.Fraction` arithmetic.  Floats are converted via
their exact binary value, which preserves the identities: they hold for any
rational parameters, not just "nice" ones.  Callers wanting a specific
rational (say 1/3) should pass a Fraction directly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

RationalLike = Union[int, float, Fraction]


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot convert {x!r} to a rational")
        return Fraction(x)
    raise TypeError(f"expected int, float or Fraction, got {type(x).__name__}")


def half_odd_exponent(gamma: RationalLike) -> Fraction:
    """Exact indicial exponent s = |gamma| + 1/2."""
    return abs(as_fraction(gamma)) + Fraction(1, 2)
