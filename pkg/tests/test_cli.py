import csv
import json
import math
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

import radqes.cli as cli
from radqes.core import ConsistencyError


def _run(args, expect=0):
    code = cli.main([str(a) for a in args])
    assert code == expect, f"exit {code} != {expect} for {args}"


def _read_csv(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _schema(name: str) -> dict:
    text = resources.files("radqes.schemas").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def _artifact_bytes(outdir: Path) -> dict[str, bytes]:
    return {
        p.name: p.read_bytes()
        for p in sorted(outdir.iterdir())
        if not p.name.startswith("manifest_")
    }


class TestExact:
    def test_eigenvalue_table(self, tmp_path, capsys):
        _run(["exact", "--gamma", 0.5, "--nu-max", 2, "--outdir", tmp_path])
        rows = _read_csv(tmp_path / "eigenvalues.csv")
        assert [(int(r["nu"]), float(r["W"])) for r in rows] == [(0, 3.0), (1, 7.0), (2, 11.0)]
        assert "nu=2  W=11" in capsys.readouterr().out

    def test_single_state(self, tmp_path):
        _run(["exact", "--gamma", 0, "--nu-max", 0, "--outdir", tmp_path])
        rows = _read_csv(tmp_path / "eigenvalues.csv")
        assert [(int(r["nu"]), float(r["W"])) for r in rows] == [(0, 2.0)]

    def test_state_samples_written(self, tmp_path):
        _run(["exact", "--gamma", 0.5, "--nu-max", 1, "--outdir", tmp_path])
        rows = _read_csv(tmp_path / "state_00.csv")
        rho, f = float(rows[39]["rho"]), float(rows[39]["F"])
        assert f == pytest.approx(rho * math.exp(-(rho**2) / 2), rel=1e-12)

    def test_missing_gamma_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["exact", "--nu-max", "2"])
        assert exc.value.code == 2

    def test_negative_nu_max_rejected(self, tmp_path, capsys):
        _run(["exact", "--gamma", 0.5, "--nu-max", -1, "--outdir", tmp_path], expect=2)
        assert "nu_max" in capsys.readouterr().err


class TestConditional:
    def test_n1_family(self, tmp_path):
        _run(["conditional", "--n", 1, "--gamma", 0.5, "--b", 0, "--outdir", tmp_path])
        family = json.loads((tmp_path / "family.json").read_text())
        jsonschema.validate(family, _schema("family.schema.json"))
        assert family["W"] == 5.0
        assert family["roots"] == pytest.approx([2.0, -2.0], abs=1e-12)

    def test_n0_root(self, tmp_path):
        _run(["conditional", "--n", 0, "--gamma", 0.5, "--b", 2, "--outdir", tmp_path])
        rows = _read_csv(tmp_path / "roots.csv")
        assert float(rows[0]["a"]) == pytest.approx(-2.0, abs=1e-12)

    def test_n10_all_roots_real_sorted(self, tmp_path):
        _run(["conditional", "--n", 10, "--gamma", 1, "--b", 1, "--outdir", tmp_path])
        rows = _read_csv(tmp_path / "roots.csv")
        roots = [float(r["a"]) for r in rows]
        assert len(roots) == 11
        assert roots == sorted(roots, reverse=True)
        coeff_rows = _read_csv(tmp_path / "coefficients.csv")
        assert len(coeff_rows) == 11 * 11


class TestOracle:
    def test_spectrum_matches_exact(self, tmp_path):
        _run(
            ["oracle", "--gamma", 0.5, "--a", 0, "--b", 0, "--states", 2,
             "--points", 2000, "--outdir", tmp_path]
        )
        rows = _read_csv(tmp_path / "spectrum.csv")
        assert float(rows[0]["W"]) == pytest.approx(3.0, abs=1e-6)
        assert float(rows[1]["W"]) == pytest.approx(7.0, abs=1e-6)
        assert [int(r["nodes"]) for r in rows] == [0, 1]

    def test_conditional_point(self, tmp_path):
        _run(["oracle", "--gamma", 0.5, "--a", 2, "--points", 2000, "--outdir", tmp_path])
        rows = _read_csv(tmp_path / "spectrum.csv")
        assert float(rows[0]["W"]) == pytest.approx(5.0, abs=1e-6)

    def test_hft_report(self, tmp_path):
        _run(
            ["oracle", "--gamma", 0.5, "--a", 1, "--b", 1, "--hft",
             "--points", 2000, "--outdir", tmp_path]
        )
        report = json.loads((tmp_path / "hft_report.json").read_text())
        jsonschema.validate(report, _schema("hft_report.schema.json"))
        assert report["max_rel_error"] <= 1e-3
        assert report["dW_da_fd"] > 0
        assert report["dW_db_fd"] > 0
        assert report["valid"] is True


class TestRefute:
    def test_pseudo_confined_report(self, tmp_path):
        record = {
            "model": "pseudo_confined",
            "omega": 1.0, "beta_t": 0.5, "eta": 1.0, "a_t": 1.0, "b_t": 1.0, "n_r": 0,
        }
        model_file = tmp_path / "model.json"
        model_file.write_text(json.dumps(record))
        _run(["refute", "--model", model_file, "--points", 1000, "--outdir", tmp_path])
        report = json.loads((tmp_path / "refutation_report.json").read_text())
        jsonschema.validate(report, _schema("refutation_report.schema.json"))
        assert report["verdicts"]["hft_violated"] is True
        assert report["verdicts"]["in_spectrum"] is False

    def test_harmonic_model_is_an_error(self, tmp_path, capsys):
        model_file = tmp_path / "model.json"
        model_file.write_text(json.dumps({"model": "kg_oscillator", "omega": 1.0, "gamma_t": 0.5}))
        _run(["refute", "--model", model_file, "--outdir", tmp_path], expect=2)
        assert "exactly solvable" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        _run(["refute", "--model", tmp_path / "nope.json", "--outdir", tmp_path], expect=2)

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        _run(["refute", "--model", bad, "--outdir", tmp_path], expect=2)


class TestSweep:
    def test_root_curves(self, tmp_path):
        _run(
            ["sweep", "--gamma", 0.5, "--n-min", 1, "--n-max", 1,
             "--b", 0, 0.5, 1, "--outdir", tmp_path]
        )
        rows = _read_csv(tmp_path / "sweep.csv")
        first = [float(r["a"]) for r in rows if r["i"] == "1"]
        assert len(first) == 3
        assert first[0] > first[1] > first[2]  # a^(1,1) decreases with b

    def test_n0_line(self, tmp_path):
        _run(["sweep", "--gamma", 1.5, "--n-max", 0, "--b", 0.5, 1.0, "--outdir", tmp_path])
        rows = _read_csv(tmp_path / "sweep.csv")
        for row in rows:
            assert float(row["a"]) == pytest.approx(-2.0 * float(row["b"]), abs=1e-12)

    def test_empty_b_grid_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["sweep", "--gamma", "0.5", "--n-max", "1", "--b"])
        assert exc.value.code == 2

    def test_bad_n_range(self, tmp_path):
        _run(
            ["sweep", "--gamma", 0.5, "--n-min", 3, "--n-max", 1, "--b", 1,
             "--outdir", tmp_path],
            expect=2,
        )


class TestReproducibility:
    def test_identical_invocations_are_byte_identical(self, tmp_path):
        args = ["conditional", "--n", 2, "--gamma", 1.0, "--b", 1.5]
        _run(args + ["--outdir", tmp_path / "one"])
        _run(args + ["--outdir", tmp_path / "two"])
        assert _artifact_bytes(tmp_path / "one") == _artifact_bytes(tmp_path / "two")

    @pytest.mark.parametrize(
        "args",
        [
            ["exact", "--gamma", 2.5, "--nu-max", 3],
            ["oracle", "--gamma", 1.0, "--a", 0.5, "--b", 0.25, "--points", 500, "--states", 2],
            ["sweep", "--gamma", 0.5, "--n-max", 2, "--b", 0.0, 1.0],
        ],
    )
    def test_rerun_from_manifest_reproduces_bytes(self, tmp_path, args):
        _run(args + ["--outdir", tmp_path / "first"])
        manifests = list((tmp_path / "first").glob("manifest_*.json"))
        assert len(manifests) == 1
        manifest = json.loads(manifests[0].read_text())
        jsonschema.validate(manifest, _schema("manifest.schema.json"))

        _run(["rerun", "--manifest", manifests[0], "--outdir", tmp_path / "second"])
        assert _artifact_bytes(tmp_path / "first") == _artifact_bytes(tmp_path / "second")

    def test_manifest_lists_every_artifact_with_digest(self, tmp_path):
        _run(["exact", "--gamma", 0.5, "--nu-max", 1, "--outdir", tmp_path])
        manifest = json.loads((tmp_path / "manifest_exact.json").read_text())
        listed = {a["path"] for a in manifest["artifacts"]}
        on_disk = set(_artifact_bytes(tmp_path))
        assert listed == on_disk
        import hashlib

        for art in manifest["artifacts"]:
            digest = hashlib.sha256((tmp_path / art["path"]).read_bytes()).hexdigest()
            assert digest == art["sha256"]

    def test_no_temp_files_left(self, tmp_path):
        _run(["exact", "--gamma", 0.5, "--nu-max", 0, "--outdir", tmp_path])
        assert not list(tmp_path.glob("*.tmp"))


class TestEnvironment:
    def test_outdir_env_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTDIR_ENV, str(tmp_path / "env_out"))
        _run(["exact", "--gamma", 0.5, "--nu-max", 0])
        assert (tmp_path / "env_out" / "eigenvalues.csv").exists()

    def test_consistency_error_exit_code(self, tmp_path, monkeypatch, capsys):
        def boom(*args, **kwargs):
            raise ConsistencyError("fabricated failure")

        monkeypatch.setattr(cli, "conditional_family", boom)
        _run(["conditional", "--n", 1, "--gamma", 0.5, "--b", 0, "--outdir", tmp_path], expect=3)
        assert "consistency failure" in capsys.readouterr().err

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--version"])
        assert exc.value.code == 0
        assert "radqes" in capsys.readouterr().out
