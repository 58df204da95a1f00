import math

import numpy as np
import pytest

from radqes.conditional import conditional_family, termination_energy
from radqes.core import (
    GridFunction,
    PolynomialSolution,
    RadialProblem,
    count_nodes,
    default_residual_grid,
    exponent,
    ode_residual,
    quadrature,
)
from radqes.exact import exact_state


@pytest.mark.parametrize(
    "gamma, expected",
    [(0.0, 0.5), (0.5, 1.0), (-1.5, 2.0), (3.0, 3.5)],
)
def test_exponent(gamma, expected):
    assert exponent(RadialProblem(gamma)) == expected


def test_exponent_even_in_gamma():
    rng = np.random.default_rng(7)
    for gamma in rng.uniform(0.0, 6.0, size=25):
        assert exponent(RadialProblem(gamma)) == exponent(RadialProblem(-gamma))


def test_problem_rejects_non_finite():
    with pytest.raises(ValueError):
        RadialProblem(math.nan)
    with pytest.raises(ValueError):
        RadialProblem(1.0, a=math.inf)


def test_exactly_solvable_flag():
    assert RadialProblem(1.0).is_exactly_solvable
    assert not RadialProblem(1.0, a=1e-12).is_exactly_solvable
    assert not RadialProblem(1.0, b=-2.0).is_exactly_solvable


class TestPolynomialSolution:
    def test_normalisation_enforced(self):
        with pytest.raises(ValueError):
            PolynomialSolution(s=1.0, b_half=0.0, coeffs=(2.0,), W=3.0)
        with pytest.raises(ValueError):
            PolynomialSolution(s=1.0, b_half=0.0, coeffs=(), W=3.0)
        with pytest.raises(ValueError):
            PolynomialSolution(s=1.0, b_half=0.0, coeffs=(1.0,), W=3.0, step=3)

    def test_dense_coeffs_step2(self):
        sol = PolynomialSolution(s=1.0, b_half=0.0, coeffs=(1.0, -2 / 3), W=7.0, step=2)
        assert sol.degree == 2
        np.testing.assert_allclose(sol.dense_coeffs(), [1.0, 0.0, -2 / 3])

    def test_evaluate_ground_state(self):
        # gamma = 1/2 ground state is rho * exp(-rho^2/2)
        sol = PolynomialSolution(s=1.0, b_half=0.0, coeffs=(1.0,), W=3.0, step=2)
        rho = np.array([0.5, 1.0, 2.0])
        np.testing.assert_allclose(sol.evaluate(rho), rho * np.exp(-(rho**2) / 2), rtol=1e-15)

    def test_evaluate_rejects_nonpositive(self):
        sol = PolynomialSolution(s=1.0, b_half=0.0, coeffs=(1.0,), W=3.0)
        with pytest.raises(ValueError):
            sol.evaluate([0.0, 1.0])


class TestOdeResidual:
    def test_exact_ground_state(self):
        sol = exact_state(0, 0.5).solution
        assert ode_residual(sol, RadialProblem(0.5), [0.5, 1.0, 2.0]) <= 1e-12

    def test_nodeless_coupled_solution(self):
        # degree-0 coupled solution: a = -b s at the n = 0 termination energy
        gamma, b = 1.5, 2.0
        s = 2.0
        sol = PolynomialSolution(
            s=s, b_half=b / 2, coeffs=(1.0,), W=termination_energy(0, gamma, b), step=1
        )
        problem = RadialProblem(gamma, a=-b * s, b=b)
        assert ode_residual(sol, problem, default_residual_grid()) <= 1e-12

    def test_perturbed_energy_leaves_residual(self):
        # off the eigenvalue the residual is |dW * F|, well above noise
        sol = exact_state(0, 0.5).solution
        bumped = PolynomialSolution(
            s=sol.s, b_half=sol.b_half, coeffs=sol.coeffs, W=sol.W + 0.1, step=sol.step
        )
        assert ode_residual(bumped, RadialProblem(0.5), [0.5, 1.0, 2.0]) > 1e-3

    def test_rejects_bad_grid(self):
        sol = exact_state(0, 0.5).solution
        with pytest.raises(ValueError):
            ode_residual(sol, RadialProblem(0.5), [-1.0, 1.0])
        with pytest.raises(ValueError):
            ode_residual(sol, RadialProblem(0.5), [])

    @pytest.mark.parametrize("gamma", [0.0, 0.5, 1.0, 2.5])
    @pytest.mark.parametrize("nu", [0, 1, 3, 7, 10])
    def test_exact_states_solve_equation(self, gamma, nu):
        sol = exact_state(nu, gamma).solution
        assert ode_residual(sol, RadialProblem(gamma), default_residual_grid()) <= 1e-10

    @pytest.mark.parametrize("gamma, b", [(0.5, 1.0), (1.0, -2.0), (2.5, 3.0)])
    @pytest.mark.parametrize("n", [0, 1, 2, 4])
    def test_coupled_families_solve_equation(self, gamma, b, n):
        fam = conditional_family(n, gamma, b)
        for a, sol in zip(fam.roots, fam.solutions):
            problem = RadialProblem(gamma, a=a, b=b)
            assert ode_residual(sol, problem, default_residual_grid()) <= 1e-10


class TestGridFunction:
    def test_from_samples_validates(self):
        with pytest.raises(ValueError):
            GridFunction.from_samples([0.0, 1.0], [1.0, 1.0])  # node at origin
        with pytest.raises(ValueError):
            GridFunction.from_samples([1.0, 1.0], [1.0, 1.0])  # not increasing
        with pytest.raises(ValueError):
            GridFunction.from_samples([1.0, 2.0], [1.0])  # length mismatch
        with pytest.raises(ValueError):
            GridFunction.from_samples([], [])

    def test_norm_and_normalized(self):
        rho = np.linspace(0.001, 10.0, 5000)
        f = GridFunction.from_samples(rho, 3.0 * rho * np.exp(-(rho**2) / 2))
        # integral of rho^2 exp(-rho^2) over (0, inf) is sqrt(pi)/4
        assert f.norm == pytest.approx(3.0 * math.sqrt(math.sqrt(math.pi) / 4), rel=1e-6)
        assert abs(f.normalized().norm - 1.0) <= 1e-12

    def test_values_read_only(self):
        f = GridFunction.from_samples([1.0, 2.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            f.values[0] = 5.0

    def test_normalize_zero_function(self):
        f = GridFunction.from_samples([1.0, 2.0], [0.0, 0.0])
        with pytest.raises(ValueError):
            f.normalized()


def test_quadrature_includes_origin_panel():
    # integrand rho on (0, 1]: the implicit zero anchor completes the triangle
    nodes = np.linspace(0.01, 1.0, 100)
    assert quadrature(nodes, nodes) == pytest.approx(0.5, abs=1e-12)


class TestCountNodes:
    def test_positive_function(self):
        rho = np.linspace(0.05, 8.0, 300)
        f = GridFunction.from_samples(rho, rho * np.exp(-(rho**2) / 2))
        assert count_nodes(f) == 0

    def test_first_excited_coupled_solution(self):
        # second member of the n = 1 family has exactly one interior zero
        fam = conditional_family(1, 0.5, 1.0)
        assert count_nodes(fam.solutions[1].sample(default_residual_grid())) == 1

    def test_two_crossings(self):
        rho = np.linspace(0.1, 3.0, 50)
        f = GridFunction.from_samples(rho, np.sin(2.5 * rho + 0.2))
        assert count_nodes(f) == 2

    def test_zero_sample_inherits_sign(self):
        f = GridFunction.from_samples([1.0, 2.0, 3.0], [1.0, 0.0, -1.0])
        assert count_nodes(f) == 1
        g = GridFunction.from_samples([1.0, 2.0, 3.0], [1.0, 0.0, 1.0])
        assert count_nodes(g) == 0

    def test_tail_noise_ignored(self):
        values = np.concatenate((np.full(50, 1.0), np.full(5, 1e-15)))
        values[-2] = -1e-15  # eigensolver dust
        f = GridFunction.from_samples(np.arange(1, 56, dtype=float), values)
        assert count_nodes(f) == 0

    def test_all_zero(self):
        f = GridFunction.from_samples([1.0, 2.0], [0.0, 0.0])
        assert count_nodes(f) == 0
