"""Three radial models, their canonical reduction, and refutation reports.

Each model is a radial eigenvalue equation of the form

    U''(r) + [ E + (1/4 - g^2)/r^2 - w^2 r^2 - (lin) r - (coul)/r ] U(r) = 0,

reduced to the canonical problem by rho = sqrt(w) r, which divides energies
by w.  For each model the literature offers a closed-form spectrum; this
module evaluates those published claims verbatim and tests them two ways:

* Hellmann-Feynman: a true eigenvalue must satisfy dE/d(coul) = <1/r> > 0,
  while the claimed formulas do not depend on the Coulomb coupling at all.
* Direct membership: the claimed value (in canonical units) is compared with
  the numerical spectrum of the reduced problem.

The outcome is a :class:`RefutationReport` whose verdicts are reproducible
from the numbers stored inside it.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Union

from .conditional import coefficient_polynomial, termination_energy
from .core import RadialProblem
from .oracle import OracleConfig, expectation, solve_spectrum, spectrum_vs_formula

__all__ = [
    "ConfinedPdmModel",
    "KgOscillatorModel",
    "PseudoConfinedModel",
    "RefutationReport",
    "claimed_energy",
    "claimed_hft_partials",
    "model_from_dict",
    "model_to_dict",
    "refute",
    "to_canonical",
]


def _require_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ValueError(f"{name} must be positive, got {value}")


def _require_index(n_r: int) -> None:
    if n_r < 0:
        raise ValueError(f"radial quantum number must be >= 0, got {n_r}")


@dataclass(frozen=True)
class KgOscillatorModel:
    """Purely harmonic radial model: U'' + [lam + (1/4-gamma_t^2)/r^2 - omega^2 r^2] U = 0."""

    omega: float
    gamma_t: float
    n_r: int = 0

    def __post_init__(self) -> None:
        _require_positive("omega", self.omega)
        _require_index(self.n_r)


@dataclass(frozen=True)
class PseudoConfinedModel:
    """Harmonic model with linear (eta*a_t*r) and Coulomb (b_t/r) couplings.

    U'' + [E + (1/4-beta_t^2)/r^2 - omega^2 r^2 - eta*a_t*r - b_t/r] U = 0.
    """

    omega: float
    beta_t: float
    eta: float
    a_t: float
    b_t: float
    n_r: int = 0

    def __post_init__(self) -> None:
        _require_positive("omega", self.omega)
        _require_index(self.n_r)


@dataclass(frozen=True)
class ConfinedPdmModel:
    """Harmonic model with linear (2mA*r) and Coulomb (2B/r) couplings.

    U'' + [lam1 + (1/4-gamma1^2)/r^2 - omega1^2 r^2 - 2mA r - 2B/r] U = 0.
    """

    omega1: float
    gamma1: float
    m: float
    A: float
    B: float
    n_r: int = 0

    def __post_init__(self) -> None:
        _require_positive("omega1", self.omega1)
        _require_index(self.n_r)


Model = Union[KgOscillatorModel, PseudoConfinedModel, ConfinedPdmModel]

_MODEL_IDS = {
    KgOscillatorModel: "kg_oscillator",
    PseudoConfinedModel: "pseudo_confined",
    ConfinedPdmModel: "confined_pdm",
}
_MODEL_TYPES = {v: k for k, v in _MODEL_IDS.items()}


def model_id(model: Model) -> str:
    return _MODEL_IDS[type(model)]


def model_to_dict(model: Model) -> dict:
    d = asdict(model)
    d["model"] = model_id(model)
    return d


def model_from_dict(data: dict) -> Model:
    data = dict(data)
    try:
        kind = data.pop("model")
    except KeyError:
        raise ValueError("model record needs a 'model' discriminator field") from None
    try:
        cls = _MODEL_TYPES[kind]
    except KeyError:
        raise ValueError(
            f"unknown model {kind!r}; expected one of {sorted(_MODEL_TYPES)}"
        ) from None
    try:
        return cls(**data)
    except TypeError as exc:
        raise ValueError(f"bad {kind} record: {exc}") from None


def to_canonical(model: Model) -> tuple[RadialProblem, float]:
    """Reduce the model to canonical form via rho = sqrt(omega) r.

    Returns (problem, scale): canonical eigenvalues W correspond to model
    energies scale * W.
    """
    if isinstance(model, KgOscillatorModel):
        return RadialProblem(gamma=model.gamma_t), model.omega
    if isinstance(model, PseudoConfinedModel):
        w = model.omega
        return (
            RadialProblem(
                gamma=model.beta_t,
                a=model.b_t / w**0.5,
                b=model.eta * model.a_t / w**1.5,
            ),
            w,
        )
    if isinstance(model, ConfinedPdmModel):
        w = model.omega1
        return (
            RadialProblem(
                gamma=model.gamma1,
                a=2.0 * model.B / w**0.5,
                b=2.0 * model.m * model.A / w**1.5,
            ),
            w,
        )
    raise TypeError(f"not a model: {type(model).__name__}")


def claimed_energy(model: Model) -> float:
    """Published closed-form energy for the model, evaluated verbatim."""
    if isinstance(model, KgOscillatorModel):
        return 2 * model.omega * (2 * model.n_r + abs(model.gamma_t) + 1)
    if isinstance(model, PseudoConfinedModel):
        return (
            2 * model.omega * (2 * model.n_r + abs(model.beta_t) + 1)
            - model.a_t**2 * model.eta**2 / (4 * model.omega**2)
        )
    if isinstance(model, ConfinedPdmModel):
        return (
            2 * model.omega1 * (2 * model.n_r + abs(model.gamma1) + 1)
            - model.m**2 * model.A**2 / model.omega1**2
        )
    raise TypeError(f"not a model: {type(model).__name__}")


def claimed_hft_partials(model: Model) -> dict[str, float]:
    """Analytic partials of the claimed formula w.r.t. its own couplings.

    The Coulomb-type partial is identically zero for both coupled models
    (the formulas simply do not contain that parameter), which is what the
    Hellmann-Feynman theorem forbids for a genuine eigenvalue.
    """
    if isinstance(model, KgOscillatorModel):
        return {}
    if isinstance(model, PseudoConfinedModel):
        return {
            "b_t": 0.0,
            "eta": -model.a_t**2 * model.eta / (2 * model.omega**2),
        }
    if isinstance(model, ConfinedPdmModel):
        return {
            "B": 0.0,
            "A": -2.0 * model.m**2 * model.A / model.omega1**2,
        }
    raise TypeError(f"not a model: {type(model).__name__}")


@dataclass(frozen=True)
class RefutationReport:
    """Everything needed to decide whether the claimed spectrum can be right.

    ``claimed_partials`` vs ``oracle_partials`` compare slopes with respect
    to the model's own couplings (HFT test); ``gap`` is the distance from
    the claimed value, in canonical units, to the nearest true eigenvalue.
    ``second_condition_residual`` evaluates the truncation constraint
    c_{n+1}(a, b) at the model's couplings with n = 2 n_r: polynomial
    solutions exist only where it vanishes, which generic parameters do not
    satisfy.  The claimed formula coincides with the termination energy only
    for n = 2 n_r (informational: ``index_note``); that coincidence is moot
    off the constraint surface.
    """

    model: str
    n_r: int
    canonical_problem: RadialProblem
    scale: float
    claimed_value: float
    claimed_partials: dict[str, float]
    oracle_partials: dict[str, float]
    oracle_nearest_eigenvalue: float
    gap: float
    accuracy_estimate: float
    second_condition_residual: float
    termination_energy_match: float
    index_note: str
    verdicts: dict[str, bool]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["canonical_problem"] = asdict(self.canonical_problem)
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)


def _oracle_partials(model: Model, problem: RadialProblem, state) -> dict[str, float]:
    """HFT slopes of the true energy w.r.t. the model's own couplings.

    Expectations transform under rho = sqrt(w) r as <1/r> = sqrt(w) <1/rho>
    and <r> = <rho>/sqrt(w); the chain rule through the canonical reduction
    gives the model-variable slopes.
    """
    inv_rho = expectation(state, "inv_rho")
    rho_mean = expectation(state, "rho")
    if isinstance(model, PseudoConfinedModel):
        w = model.omega
        return {
            "b_t": w**0.5 * inv_rho,
            "eta": model.a_t * rho_mean / w**0.5,
        }
    if isinstance(model, ConfinedPdmModel):
        w = model.omega1
        return {
            "B": 2.0 * w**0.5 * inv_rho,
            "A": 2.0 * model.m * rho_mean / w**0.5,
        }
    raise TypeError(f"not a coupled model: {type(model).__name__}")


_COULOMB_COUPLING = {PseudoConfinedModel: "b_t", ConfinedPdmModel: "B"}


def refute(model: Model, config: OracleConfig | None = None) -> RefutationReport:
    """Test the model's claimed closed-form spectrum against the oracle.

    Only the coupled models are refutable; the purely harmonic one is
    exactly solvable and its closed form is correct.
    """
    if isinstance(model, KgOscillatorModel):
        raise ValueError("model is exactly solvable; nothing to refute")
    problem, scale = to_canonical(model)
    if problem.a == 0.0 and problem.b == 0.0:
        raise ValueError(
            "both couplings vanish; the model reduces to the exactly solvable case"
        )
    config = config or OracleConfig()
    if config.num_states < model.n_r + 1:
        config = OracleConfig(
            rho_max=config.rho_max, num_points=config.num_points, num_states=model.n_r + 1
        )

    est = solve_spectrum(problem, config)
    claimed = claimed_energy(model)
    comparison = spectrum_vs_formula(problem, claimed / scale, config)
    partials_claimed = claimed_hft_partials(model)
    partials_oracle = _oracle_partials(model, problem, est.states[model.n_r])

    coulomb = _COULOMB_COUPLING[type(model)]
    n_match = 2 * model.n_r
    second_condition = coefficient_polynomial(n_match, problem.gamma, problem.b)(problem.a)
    w_term = termination_energy(n_match, problem.gamma, problem.b)

    verdicts = {
        "hft_violated": partials_claimed[coulomb] == 0.0
        and partials_oracle[coulomb] > 0.0,
        "in_spectrum": comparison.in_spectrum,
        "second_condition_satisfied": abs(second_condition) <= 1e-9,
    }
    index_note = (
        f"claimed value equals the termination energy W^({n_match}) "
        f"(difference {claimed / scale - w_term:.3e}) only because n = 2 n_r; "
        "the termination energy is itself an eigenvalue only on the "
        "constraint roots"
    )
    return RefutationReport(
        model=model_id(model),
        n_r=model.n_r,
        canonical_problem=problem,
        scale=scale,
        claimed_value=claimed,
        claimed_partials=partials_claimed,
        oracle_partials=partials_oracle,
        oracle_nearest_eigenvalue=comparison.nearest_eigenvalue,
        gap=comparison.gap,
        accuracy_estimate=comparison.accuracy_estimate,
        second_condition_residual=float(second_condition),
        termination_energy_match=float(claimed / scale - w_term),
        index_note=index_note,
        verdicts=verdicts,
    )
