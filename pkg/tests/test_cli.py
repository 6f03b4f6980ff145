import json
import math

import pytest

from qbounds.cli import main

# small grid keeps the CLI suite fast; still odd and Simpson-compatible
GRID = ["--grid", "1001"]


def run(tmp_path, *argv):
    out = tmp_path / "out.csv"
    report = tmp_path / "report.json"
    code = main([*argv, "--out", str(out), "--report", str(report)])
    csv_text = out.read_text() if out.exists() else None
    doc = json.loads(report.read_text()) if report.exists() else None
    return code, csv_text, doc


def rows_of(csv_text):
    lines = csv_text.strip().split("\n")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


class TestBoundsSweep:
    def test_noon_sweep(self, tmp_path):
        code, csv_text, doc = run(
            tmp_path, "bounds", "--example", "noon", "--n-range", "1:30", *GRID
        )
        assert code == 0
        header, rows = rows_of(csv_text)
        assert header == ["axis", "qcrb", "obb", "mmse", "obb_residual"]
        assert len(rows) == 30
        assert float(rows[0][1]) == pytest.approx(0.01, rel=1e-10)
        for r in rows:
            axis, qcrb, obb, mmse = (float(v) for v in r[:4])
            assert obb <= qcrb + 1e-12
            assert obb <= mmse + 1e-10
        assert doc["diagnostics"]["grid_m"] == 1001
        assert doc["diagnostics"]["max_ode_residual"] <= 1e-4
        assert doc["version"]

    def test_dephasing_eta_sweep(self, tmp_path):
        values = ",".join(f"{v/10:.1f}" for v in range(1, 11))
        code, csv_text, _ = run(
            tmp_path,
            "bounds", "--example", "dephasing", "--n", "5",
            "--sweep", f"eta={values}", *GRID,
        )
        assert code == 0
        _, rows = rows_of(csv_text)
        assert len(rows) == 10
        assert [float(r[0]) for r in rows] == pytest.approx(
            [v / 10 for v in range(1, 11)]
        )
        # eta = 1 row matches the scalar closed form at J = n eta^2 = 5
        j, a = 5.0, math.pi
        expected = 1 / j - 2 / (a * j**1.5) * math.tanh(a * math.sqrt(j) / 2)
        assert float(rows[-1][2]) == pytest.approx(expected, rel=1e-5)

    def test_field_single_row(self, tmp_path):
        code, csv_text, _ = run(
            tmp_path, "bounds", "--example", "field", "--n", "1", *GRID
        )
        assert code == 0
        _, rows = rows_of(csv_text)
        assert float(rows[0][1]) == pytest.approx(0.70711, abs=1e-4)

    def test_interferometer_mmse_column_empty(self, tmp_path):
        code, csv_text, _ = run(
            tmp_path, "bounds", "--example", "interferometer", "--n", "2", *GRID
        )
        assert code == 0
        _, rows = rows_of(csv_text)
        assert rows[0][3] == ""

    def test_determinism(self, tmp_path):
        args = ("bounds", "--example", "noon", "--n-range", "1:5", *GRID)
        _, first, _ = run(tmp_path, *args)
        _, second, _ = run(tmp_path, *args)
        assert first == second

    def test_report_round_trip(self, tmp_path):
        code, csv_text, doc = run(
            tmp_path, "bounds", "--example", "noon", "--n-range", "1:3", *GRID
        )
        assert code == 0
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(doc))
        code2, csv2, _ = run(tmp_path, "bounds", "--config", str(cfg))
        assert code2 == 0
        assert csv2 == csv_text

    def test_config_echo_is_lossless(self, tmp_path):
        _, _, doc = run(tmp_path, "bounds", "--example", "noon", "--n", "2", *GRID)
        cfg = doc["config"]
        assert cfg["example"] == "noon"
        assert cfg["params"] == {"N": 10.0}
        assert cfg["prior"] == pytest.approx([0.0, math.pi / 10.0])
        assert cfg["grid_points"] == 1001
        assert cfg["n_list"] == [2]


class TestBiasDump:
    def test_stride_row_count(self, tmp_path):
        code, csv_text, _ = run(
            tmp_path,
            "bias", "--example", "noon", "--n", "1",
            "--grid", "4001", "--stride", "100",
        )
        assert code == 0
        header, rows = rows_of(csv_text)
        assert header == ["x", "bias_opt", "bias_mmse"]
        assert len(rows) == 41

    def test_midpoint_bias_zero(self, tmp_path):
        code, csv_text, _ = run(
            tmp_path, "bias", "--example", "noon", "--n", "1", *GRID
        )
        assert code == 0
        _, rows = rows_of(csv_text)
        mid = rows[len(rows) // 2]
        assert float(mid[1]) == pytest.approx(0.0, abs=1e-8)

    def test_mmse_bias_decays(self, tmp_path):
        def max_bias(n):
            _, csv_text, _ = run(
                tmp_path, "bias", "--example", "noon", "--n", str(n), *GRID
            )
            _, rows = rows_of(csv_text)
            return max(abs(float(r[2])) for r in rows)

        assert max_bias(20) < max_bias(1)

    def test_interferometer_unsupported(self, tmp_path):
        code, _, _ = run(tmp_path, "bias", "--example", "interferometer", "--n", "1")
        assert code == 2


class TestMmseCommand:
    def test_prior_baseline_n0(self, tmp_path):
        code, csv_text, doc = run(
            tmp_path, "mmse", "--example", "noon", "--n", "0", *GRID
        )
        assert code == 0
        header, rows = rows_of(csv_text)
        assert header == ["k", "estimate", "zero_evidence"]
        assert len(rows) == 1
        assert float(rows[0][1]) == pytest.approx(math.pi / 20.0, rel=1e-10)
        assert doc["rows"][0]["mse"] == pytest.approx((math.pi / 10) ** 2 / 12, rel=1e-9)

    def test_estimates_per_outcome(self, tmp_path):
        code, csv_text, _ = run(
            tmp_path, "mmse", "--example", "noon", "--n", "4", *GRID
        )
        assert code == 0
        _, rows = rows_of(csv_text)
        assert len(rows) == 5
        estimates = [float(r[1]) for r in rows]
        assert estimates == sorted(estimates)


class TestConfigErrors:
    def test_empty_n_range(self, tmp_path):
        code, _, _ = run(tmp_path, "bounds", "--example", "noon", "--n-range", "5:1")
        assert code == 2

    def test_missing_example(self, tmp_path):
        code, _, _ = run(tmp_path, "bounds", "--n", "1")
        assert code == 2

    def test_even_grid(self, tmp_path):
        code, _, _ = run(
            tmp_path, "bounds", "--example", "noon", "--n", "1", "--grid", "1000"
        )
        assert code == 2

    def test_n_zero_rejected_for_bounds(self, tmp_path):
        code, _, _ = run(tmp_path, "bounds", "--example", "noon", "--n", "0")
        assert code == 2

    def test_bad_param_syntax(self, tmp_path):
        code, _, _ = run(
            tmp_path, "bounds", "--example", "noon", "--n", "1", "--param", "N:10"
        )
        assert code == 2

    def test_bad_model_parameter(self, tmp_path):
        code, _, _ = run(
            tmp_path,
            "bounds", "--example", "dephasing", "--n", "1",
            "--param", "eta=-0.5", *GRID,
        )
        assert code == 2

    def test_env_grid_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QBOUNDS_GRID", "501")
        _, _, doc = run(tmp_path, "bounds", "--example", "noon", "--n", "1")
        assert doc["config"]["grid_points"] == 501

    def test_env_grid_must_be_odd(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QBOUNDS_GRID", "500")
        code, _, _ = run(tmp_path, "bounds", "--example", "noon", "--n", "1")
        assert code == 2
