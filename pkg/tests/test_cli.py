import csv
import json
from pathlib import Path

import numpy as np
import pytest

from nmlab import cli, spectra

REPO = Path(__file__).resolve().parent.parent
CONFIGS = REPO / "configs"


def load_config(name):
    return json.loads((CONFIGS / f"{name}.json").read_text())


def patch_paths(scenario, params, tmp_path):
    # Input CSVs in the templates are repo-relative.
    if scenario == "fig6":
        params["spectrum_csv"] = str(CONFIGS / "fig6_spectrum.csv")
    if scenario == "synth":
        params["kappa_csv"] = str(CONFIGS / "synth_kappa.csv")
    return params


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestValidate:
    def test_epsilon_out_of_range(self):
        violations = cli.validate("fig2", {"eps_min": 0.0, "eps_max": 0.6, "eps_step": 0.005})
        assert any("epsilon must be <= 0.5" in v for v in violations)

    def test_correlation_out_of_range(self):
        params = load_config("fig4")
        params["K"] = -1.2
        assert any("K in [-1, 1]" in v for v in cli.validate("fig4", params))

    def test_wellformed_fig3_config(self):
        assert cli.validate("fig3", load_config("fig3")) == []

    def test_missing_key(self):
        params = load_config("fig1")
        del params["sigma"]
        assert any("sigma" in v and "missing" in v for v in cli.validate("fig1", params))

    def test_unknown_scenario(self):
        assert cli.validate("fig9", {}) != []

    def test_all_templates_valid(self):
        for scenario in cli.SCENARIOS:
            assert cli.validate(scenario, load_config(scenario)) == [], scenario


class TestRun:
    @pytest.mark.parametrize("scenario", cli.SCENARIOS)
    def test_scenario_runs_and_writes_manifest(self, scenario, tmp_path):
        params = patch_paths(scenario, load_config(scenario), tmp_path)
        out = tmp_path / "out"
        assert cli.run(scenario, params, out) == 0
        manifest = json.loads((out / f"{scenario}_manifest.json").read_text())
        assert manifest["scenario"] == scenario
        assert manifest["outputs"]
        for entry in manifest["outputs"]:
            data = (out / entry["file"]).read_bytes()
            import hashlib

            assert hashlib.sha256(data).hexdigest() == entry["sha256"]

    @pytest.mark.parametrize("scenario", cli.SCENARIOS)
    def test_byte_identical_reruns(self, scenario, tmp_path):
        params = patch_paths(scenario, load_config(scenario), tmp_path)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert cli.run(scenario, dict(params), out1) == 0
        assert cli.run(scenario, dict(params), out2) == 0
        for f in sorted(out1.glob("*.csv")):
            assert f.read_bytes() == (out2 / f.name).read_bytes()

    def test_invalid_config_exit_code(self, tmp_path, capsys):
        code = cli.run("fig2", {"eps_min": 0, "eps_max": 0.7, "eps_step": 0.01}, tmp_path)
        assert code == 2
        err = json.loads(capsys.readouterr().err)
        assert err["violations"]

    def test_singular_epsilon_exit_code(self, tmp_path, capsys):
        code = cli.run("classify", {"epsilon": 0.25}, tmp_path)
        assert code == 4
        assert "singular" in capsys.readouterr().err

    def test_io_failure_exit_code(self, tmp_path, capsys):
        params = load_config("synth")
        params["kappa_csv"] = str(tmp_path / "missing.csv")
        assert cli.run("synth", params, tmp_path) == 3

    def test_main_entrypoint(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(load_config("fig2")))
        out = tmp_path / "out"
        assert cli.main(["fig2", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "fig2.csv").exists()

    def test_main_bad_json(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        assert cli.main(["fig2", "--config", str(cfg), "--out", str(tmp_path)]) == 2


class TestOutputs:
    def test_fig1_schema(self, tmp_path):
        cli.run("fig1", load_config("fig1"), tmp_path)
        rows = read_rows(tmp_path / "fig1.csv")
        assert set(rows[0]) == {"t", "A_theta", "kappa_mag"}
        a_values = sorted({float(r["A_theta"]) for r in rows})
        assert a_values == load_config("fig1")["a_theta_values"]

    def test_fig2_strong_row(self, tmp_path):
        cli.run("fig2", load_config("fig2"), tmp_path)
        rows = read_rows(tmp_path / "fig2.csv")
        by_eps = {round(float(r["epsilon"]), 3): r for r in rows}
        assert by_eps[0.26]["classification"] == "strong"
        assert by_eps[0.1]["classification"] == "weak"
        assert by_eps[0.25]["classification"] == "singular"
        assert by_eps[0.0]["classification"] == "markovian"

    def test_fig4_alice_only_column_decays(self, tmp_path):
        cli.run("fig4", load_config("fig4"), tmp_path)
        rows = read_rows(tmp_path / "fig4.csv")
        alice_only = [float(r["mi_4state_alice_only"]) for r in rows]
        assert all(b <= a + 1e-9 for a, b in zip(alice_only, alice_only[1:]))

    def test_synth_manifest_reports_roundtrip(self, tmp_path):
        params = patch_paths("synth", load_config("synth"), tmp_path)
        cli.run("synth", params, tmp_path)
        manifest = json.loads((tmp_path / "synth_manifest.json").read_text())
        assert manifest["roundtrip_error"] < 1e-6
        assert manifest["realizable"] is True
        profile = spectra.read_profile_csv(tmp_path / "synth_spectrum.csv")
        assert np.all(profile.density >= 0)

    def test_fig6_kappa_magnitude_bounded(self, tmp_path):
        params = patch_paths("fig6", load_config("fig6"), tmp_path)
        cli.run("fig6", params, tmp_path)
        rows = read_rows(tmp_path / "fig6.csv")
        assert all(float(r["kappa_mag"]) <= 1 + 1e-6 for r in rows)
        assert float(rows[0]["kappa_mag"]) == pytest.approx(1.0, abs=1e-9)

    def test_lf_line_endings_and_header(self, tmp_path):
        cli.run("fig2", load_config("fig2"), tmp_path)
        raw = (tmp_path / "fig2.csv").read_bytes()
        assert b"\r" not in raw
        assert raw.split(b"\n", 1)[0] == b"epsilon,C1,C2,C2_minus_C1,classification"
