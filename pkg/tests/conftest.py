"""Shared parameter batteries for the test suite."""

from __future__ import annotations

import pytest

# gamma values exercising integer, half-integer and fractional indicial
# exponents (s = 0.5, 1, 1.5, 3)
GAMMA_BATTERY = (0.0, 0.5, 1.0, 2.5)

# ten (gamma, b) pairs for the closed-form and root-realness batteries;
# includes the hand-checked points (1/2, 0), (1/2, 1) and (3, 5)
GAMMA_B_BATTERY = (
    (0.5, 0.0),
    (0.5, 1.0),
    (3.0, 5.0),
    (0.0, 0.5),
    (1.0, -2.0),
    (1.0, 1.0),
    (2.5, 3.0),
    (0.25, -1.0),
    (1.5, 2.0),
    (5.0, 0.5),
)


@pytest.fixture(scope="session")
def gamma_battery():
    return GAMMA_BATTERY


@pytest.fixture(scope="session")
def gamma_b_battery():
    return GAMMA_B_BATTERY
