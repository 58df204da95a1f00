"""Command-line front end.

Subcommands mirror the library modules: ``exact``, ``conditional``,
``oracle``, ``refute``, ``sweep``, plus ``rerun`` to repeat a recorded run
from its manifest.  Every command writes CSV/JSON artifacts (floats at 17
significant digits, files written atomically) and a manifest listing them;
identical parameters always reproduce byte-identical artifacts.

Exit codes: 0 success, 2 usage or argument error, 3 numerical-consistency
failure inside the library.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .conditional import conditional_family
from .core import ConsistencyError, RadialProblem
from .exact import exact_state
from .manifest import RunManifest, atomic_write_text
from .models import model_from_dict, refute
from .oracle import OracleConfig, hft_check, solve_spectrum

OUTDIR_ENV = "RADQES_OUTDIR"
_STATE_SAMPLES = 320
_STATE_RHO_MAX = 8.0


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")
    atomic_write_text(path, buf.getvalue())


def _write_json(path: Path, obj) -> None:
    atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _state_grid() -> np.ndarray:
    step = _STATE_RHO_MAX / _STATE_SAMPLES
    return step * np.arange(1, _STATE_SAMPLES + 1)


# ---------------------------------------------------------------------------
# command implementations: parameters dict -> artifact paths


def run_exact(params: dict, outdir: Path) -> list[Path]:
    gamma, nu_max = params["gamma"], params["nu_max"]
    if nu_max < 0:
        raise ValueError(f"nu_max must be >= 0, got {nu_max}")
    states = [exact_state(nu, gamma) for nu in range(nu_max + 1)]
    paths = []
    eig = outdir / "eigenvalues.csv"
    _write_csv(eig, ["nu", "W"], [[st.nu, st.W] for st in states])
    paths.append(eig)
    rho = _state_grid()
    for st in states:
        f = st.solution.evaluate(rho)
        p = outdir / f"state_{st.nu:02d}.csv"
        _write_csv(p, ["rho", "F"], [[float(x), float(y)] for x, y in zip(rho, f)])
        paths.append(p)
    print(f"exact spectrum, gamma={gamma}:")
    for st in states:
        print(f"  nu={st.nu}  W={st.W:.12g}")
    return paths


def run_conditional(params: dict, outdir: Path) -> list[Path]:
    n, gamma, b = params["n"], params["gamma"], params["b"]
    fam = conditional_family(n, gamma, b)
    paths = []
    roots = outdir / "roots.csv"
    _write_csv(roots, ["i", "a"], [[i + 1, r] for i, r in enumerate(fam.roots)])
    paths.append(roots)
    coeffs = outdir / "coefficients.csv"
    _write_csv(
        coeffs,
        ["i", "j", "c"],
        [
            [i + 1, j, c]
            for i, sol in enumerate(fam.solutions)
            for j, c in enumerate(sol.coeffs)
        ],
    )
    paths.append(coeffs)
    summary = outdir / "family.json"
    _write_json(
        summary,
        {
            "n": fam.n,
            "gamma": fam.gamma,
            "b": fam.b,
            "W": fam.W,
            "roots": list(fam.roots),
            "coefficients": [list(sol.coeffs) for sol in fam.solutions],
            "warnings": list(fam.warnings),
        },
    )
    paths.append(summary)
    print(f"termination energy W^({n}) = {fam.W:.12g} at gamma={gamma}, b={b}")
    for i, r in enumerate(fam.roots, start=1):
        print(f"  root {i}: a = {r:.12g}")
    for note in fam.warnings:
        print(f"  warning: {note}")
    return paths


def _oracle_config(params: dict) -> OracleConfig:
    return OracleConfig(
        rho_max=params.get("rho_max"),
        num_points=params.get("points", 4000),
        num_states=params.get("states", 6),
    )


def run_oracle(params: dict, outdir: Path) -> list[Path]:
    problem = RadialProblem(gamma=params["gamma"], a=params["a"], b=params["b"])
    config = _oracle_config(params)
    est = solve_spectrum(problem, config)
    paths = []
    spec = outdir / "spectrum.csv"
    _write_csv(
        spec,
        ["nu", "W", "accuracy", "nodes"],
        [
            [nu, float(est.eigenvalues[nu]), float(est.accuracy[nu]), est.node_counts[nu]]
            for nu in range(len(est.eigenvalues))
        ],
    )
    paths.append(spec)
    print(f"oracle spectrum of (gamma={problem.gamma}, a={problem.a}, b={problem.b}):")
    for nu in range(len(est.eigenvalues)):
        print(
            f"  nu={nu}  W={est.eigenvalues[nu]:.12g}  "
            f"(+-{est.accuracy[nu]:.1e}, {est.node_counts[nu]} nodes)"
        )
    for note in est.warnings:
        print(f"  warning: {note}")
    if params.get("hft"):
        report = hft_check(problem, params.get("nu", 0), params.get("delta", 1e-3), config)
        rp = outdir / "hft_report.json"
        _write_json(
            rp,
            {
                "problem": {"gamma": problem.gamma, "a": problem.a, "b": problem.b},
                "nu": report.nu,
                "delta": report.delta,
                "dW_da_fd": report.dW_da_fd,
                "expect_inv_rho": report.expect_inv_rho,
                "dW_db_fd": report.dW_db_fd,
                "expect_rho": report.expect_rho,
                "max_rel_error": report.max_rel_error,
                "valid": report.valid,
            },
        )
        paths.append(rp)
        print(
            f"  HFT at nu={report.nu}: dW/da={report.dW_da_fd:.8g} vs <1/rho>={report.expect_inv_rho:.8g}, "
            f"dW/db={report.dW_db_fd:.8g} vs <rho>={report.expect_rho:.8g} "
            f"(max rel err {report.max_rel_error:.2e}, valid={report.valid})"
        )
    return paths


def run_refute(params: dict, outdir: Path) -> list[Path]:
    model = model_from_dict(params["model"])
    config = _oracle_config(params)
    report = refute(model, config)
    path = outdir / "refutation_report.json"
    _write_json(path, report.to_dict())
    coulomb = {"pseudo_confined": "b_t", "confined_pdm": "B"}[report.model]
    print(f"refutation report for {report.model} (n_r={report.n_r}):")
    print(f"  claimed energy            {report.claimed_value:.12g}")
    print(f"  canonical claimed value   {report.claimed_value / report.scale:.12g}")
    print(f"  nearest true eigenvalue   {report.oracle_nearest_eigenvalue:.12g}")
    print(f"  gap                       {report.gap:.6g}")
    print(f"  claimed d/d{coulomb:<18s}{report.claimed_partials[coulomb]:.6g}")
    print(f"  oracle  d/d{coulomb:<18s}{report.oracle_partials[coulomb]:.6g}")
    for name, value in sorted(report.verdicts.items()):
        print(f"  verdict {name:<18s}{value}")
    return [path]


def run_sweep(params: dict, outdir: Path) -> list[Path]:
    gamma = params["gamma"]
    n_min, n_max, b_grid = params["n_min"], params["n_max"], params["b_grid"]
    if n_min < 0 or n_max < n_min:
        raise ValueError(f"need 0 <= n_min <= n_max, got {n_min}..{n_max}")
    if not b_grid:
        raise ValueError("b grid must not be empty")
    rows = []
    for n in range(n_min, n_max + 1):
        for b in b_grid:
            fam = conditional_family(n, gamma, float(b))
            for i, root in enumerate(fam.roots, start=1):
                rows.append([n, float(b), i, root])
    path = outdir / "sweep.csv"
    _write_csv(path, ["n", "b", "i", "a"], rows)
    print(f"swept {len(rows)} admissible roots (gamma={gamma}, n={n_min}..{n_max})")
    return [path]


_RUNNERS = {
    "exact": run_exact,
    "conditional": run_conditional,
    "oracle": run_oracle,
    "refute": run_refute,
    "sweep": run_sweep,
}


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radqes",
        description=(
            "Polynomial and numerical spectra of the radial equation "
            "F'' + [W + (1/4-gamma^2)/rho^2 - rho^2 - a/rho - b rho] F = 0"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--outdir",
        type=Path,
        default=None,
        help=f"output directory (default: ${OUTDIR_ENV} or ./radqes_out)",
    )

    p = sub.add_parser("exact", parents=[common], help="closed-form spectrum of the a=b=0 case")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--nu-max", type=int, required=True, help="highest radial index to tabulate")

    p = sub.add_parser(
        "conditional", parents=[common], help="termination energy, admissible roots, coefficients"
    )
    p.add_argument("--n", type=int, required=True, help="polynomial degree")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--b", type=float, required=True, help="linear coupling")

    p = sub.add_parser(
        "oracle", parents=[common], help="numerical spectrum (and optional Hellmann-Feynman check)"
    )
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--a", type=float, default=0.0, help="Coulomb coupling (default 0)")
    p.add_argument("--b", type=float, default=0.0, help="linear coupling (default 0)")
    p.add_argument("--states", type=int, default=6, help="number of eigenvalues (default 6)")
    p.add_argument("--points", type=int, default=4000, help="coarse grid size (default 4000)")
    p.add_argument("--rho-max", type=float, default=None, help="domain truncation (default auto)")
    p.add_argument("--hft", action="store_true", help="also run the Hellmann-Feynman check")
    p.add_argument("--nu", type=int, default=0, help="state index for --hft (default 0)")
    p.add_argument("--delta", type=float, default=1e-3, help="HFT step (default 1e-3)")

    p = sub.add_parser("refute", parents=[common], help="test a model's claimed closed-form spectrum")
    p.add_argument("--model", type=Path, required=True, help="model record (JSON file)")
    p.add_argument("--states", type=int, default=6)
    p.add_argument("--points", type=int, default=4000)

    p = sub.add_parser("sweep", parents=[common], help="admissible-root curves a^(n,i)(b)")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--b", type=float, nargs="+", required=True, help="b grid values")

    p = sub.add_parser("rerun", parents=[common], help="repeat a recorded run from its manifest")
    p.add_argument("--manifest", type=Path, required=True)

    return parser


def _parameters_from_args(args: argparse.Namespace) -> dict:
    if args.command == "exact":
        return {"gamma": args.gamma, "nu_max": args.nu_max}
    if args.command == "conditional":
        return {"n": args.n, "gamma": args.gamma, "b": args.b}
    if args.command == "oracle":
        params = {
            "gamma": args.gamma,
            "a": args.a,
            "b": args.b,
            "states": args.states,
            "points": args.points,
        }
        if args.rho_max is not None:
            params["rho_max"] = args.rho_max
        if args.hft:
            params.update({"hft": True, "nu": args.nu, "delta": args.delta})
        return params
    if args.command == "refute":
        record = json.loads(args.model.read_text(encoding="utf-8"))
        model_from_dict(record)  # validate early, before any output
        return {"model": record, "states": args.states, "points": args.points}
    if args.command == "sweep":
        return {
            "gamma": args.gamma,
            "n_min": args.n_min,
            "n_max": args.n_max,
            "b_grid": [float(b) for b in args.b],
        }
    raise AssertionError(args.command)


def _resolve_outdir(given: Path | None) -> Path:
    if given is not None:
        return given
    env = os.environ.get(OUTDIR_ENV)
    return Path(env) if env else Path("radqes_out")


def _execute(command: str, parameters: dict, outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    paths = _RUNNERS[command](parameters, outdir)
    manifest = RunManifest.for_run(command, parameters, paths, outdir, __version__)
    mpath = manifest.write(outdir)
    print(f"wrote {len(paths)} artifact(s) + {mpath}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "rerun":
            manifest = RunManifest.from_file(args.manifest)
            if manifest.command not in _RUNNERS:
                raise ValueError(f"manifest names unknown command {manifest.command!r}")
            _execute(manifest.command, manifest.parameters, _resolve_outdir(args.outdir))
        else:
            _execute(args.command, _parameters_from_args(args), _resolve_outdir(args.outdir))
    except ConsistencyError as exc:
        print(f"numerical consistency failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
