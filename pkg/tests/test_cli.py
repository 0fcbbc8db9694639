import json
import math

import numpy as np
import pytest

import iddlab.cli as cli
from iddlab.cli import main, render_json
from iddlab.metrics import BoundCheck


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestRenderJson:
    def test_floats_round_trip(self):
        vals = [0.1, 1.0 / 3.0, 1e-300, math.pi, -2.5e17]
        text = render_json({"v": vals})
        assert json.loads(text)["v"] == vals

    def test_non_finite_as_strings(self):
        text = render_json([math.inf, -math.inf, math.nan])
        assert json.loads(text) == ["inf", "-inf", "nan"]

    def test_numpy_scalars_and_arrays(self):
        text = render_json({"a": np.float64(0.5), "n": np.int64(3), "xs": np.array([1.0, 2.0])})
        assert json.loads(text) == {"a": 0.5, "n": 3, "xs": [1.0, 2.0]}

    def test_booleans_and_null(self):
        assert json.loads(render_json([True, False, None])) == [True, False, None]

    def test_unserializable_rejected(self):
        with pytest.raises(TypeError):
            render_json({"x": object()})


class TestReportEnvelope:
    def test_detect_report_shape(self, capsys):
        report = run_json(capsys, "detect", "--family", "symgamma", "--shape", "1")
        assert report["schema"] == "iddlab-report/1"
        assert report["command"] == "detect"
        assert set(report) == {"schema", "command", "config", "result", "diagnostics", "meta"}
        assert report["result"]["has_gaussian_component"] is False
        assert report["config"]["family"] == {"kind": "symgamma", "shape": 1.0}
        assert "generated_at" in report["meta"]
        assert "generated_at" not in report["result"]

    def test_output_flag_writes_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run(
            capsys, "kurtosis", "--family", "gauss", "--variance", "1",
            "--m", "3", "--output", str(path),
        )
        assert code == 0 and out == ""
        report = json.loads(path.read_text())
        assert report["command"] == "kurtosis"

    def test_detect_carries_gaussian_estimate(self, capsys):
        report = run_json(
            capsys, "detect", "--family", "gauss", "--variance", "1.4",
            "--convolve", "cpoisson:rate=3,jump=1",
        )
        assert report["result"]["has_gaussian_component"] is True
        assert report["result"]["a_hat"] == pytest.approx(0.7, abs=1e-4)
        assert len(report["result"]["remainder_profile"]) == 101


class TestSubcommands:
    def test_rescale_fixed_point(self, capsys):
        report = run_json(
            capsys, "rescale", "--family", "gauss", "--variance", "2",
            "--m", "5", "--check-fixed-point",
        )
        assert report["result"]["fixed_point"]["is_fixed_point"] is True
        assert report["result"]["sup_abs_difference"] < 1e-12

    def test_rescale_sum_transform(self, capsys):
        report = run_json(
            capsys, "rescale", "--family", "symgamma", "--shape", "1",
            "--m", "4", "--transform", "sum", "--points", "11",
        )
        assert len(report["result"]["t"]) == 11
        assert report["result"]["sup_abs_difference"] > 1e-3

    def test_kurtosis_numbers(self, capsys):
        report = run_json(
            capsys, "kurtosis", "--family", "symgamma", "--shape", "1", "--m", "5"
        )
        assert report["result"]["kappa_m"] == pytest.approx(15.0, rel=1e-12)
        assert report["result"]["relative_error"] < 1e-12

    def test_distance_default_competitor_is_matched_gaussian(self, capsys):
        report = run_json(
            capsys, "distance", "--family", "symgamma", "--shape", "1", "--r", "3"
        )
        assert report["config"]["vs"] == {"kind": "gaussian", "variance": 2.0}
        assert report["result"]["lambda_r"] == pytest.approx(0.174158, abs=1e-4)

    def test_distance_infinite_value_serialized(self, capsys):
        report = run_json(
            capsys, "distance", "--family", "gauss", "--variance", "1",
            "--vs", "gauss:variance=4", "--r", "3",
        )
        assert report["result"]["lambda_r"] == "inf"
        assert report["diagnostics"]["finite"] is False

    def test_bound_check_forward(self, capsys):
        report = run_json(
            capsys, "bound-check", "--family", "symgamma", "--shape", "1",
            "--m", "4", "--r", "3", "--assert",
        )
        assert report["result"]["holds"] is True
        assert report["result"]["lhs"] < report["result"]["rhs"]

    def test_bound_check_backward(self, capsys):
        report = run_json(
            capsys, "bound-check", "--family", "symgamma", "--shape", "1",
            "--m", "4", "--r", "3", "--backward",
        )
        assert report["result"]["direction"] == "backward"
        assert report["result"]["holds"] is True

    def test_laplace_drift(self, capsys):
        report = run_json(
            capsys, "laplace", "drift", "--family", "drift", "--sigma", "2",
        )
        assert report["command"] == "laplace drift"
        assert report["result"]["sigma_hat"] == pytest.approx(2.0, rel=1e-12)

    def test_laplace_support(self, capsys):
        report = run_json(
            capsys, "laplace", "support", "--family", "gammasub", "--shape", "2",
        )
        assert report["result"]["touches_zero"] is True

    def test_laplace_limit_with_known_sigma(self, capsys):
        report = run_json(
            capsys, "laplace", "limit", "--family", "gammasub", "--shape", "1",
            "--convolve", "drift:sigma=2", "--m", "100", "--S", "10",
            "--known-sigma", "2",
        )
        assert report["result"]["sigma_source"] == "provided"
        assert 0.0 < report["result"]["deviation"] < 0.05

    def test_approx_compare_tiny_grid(self, capsys):
        report = run_json(
            capsys, "approx-compare", "--family", "gauss", "--variance", "1",
            "--m", "2", "--alpha-grid", "1.5:1.5:1", "--scale-grid", "1.0:1.0:1",
            "--quad-n", "512",
        )
        assert report["result"]["verdict"] == "gaussian closer"
        assert report["result"]["d_gaussian"] == 0.0

    def test_empirical_summary(self, capsys, tmp_path):
        path = tmp_path / "data.txt"
        path.write_text("# header\n1.0\n-1.0\n\n")
        report = run_json(capsys, "empirical", "--input", str(path), "--cf-points", "5")
        assert report["result"]["n"] == 2
        assert report["result"]["mean"] == 0.0
        grid = np.array(report["result"]["cf_t"])
        np.testing.assert_allclose(report["result"]["cf_values"], np.cos(grid), atol=1e-12)


class TestConfigMerge:
    def test_file_supplies_defaults_flags_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"m": 9, "method": "closed-form"}))
        report = run_json(
            capsys, "kurtosis", "--family", "symgamma", "--shape", "1",
            "--config", str(cfg), "--method", "finite-difference",
        )
        assert report["result"]["m"] == 9
        assert report["config"]["method"] == "finite-difference"

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        code, _, err = run(
            capsys, "kurtosis", "--family", "gauss", "--variance", "1",
            "--m", "2", "--config", str(cfg),
        )
        assert code == 1 and "bogus" in err

    def test_malformed_config_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("not json")
        code, _, err = run(
            capsys, "detect", "--family", "gauss", "--variance", "1",
            "--config", str(cfg),
        )
        assert code == 1


class TestExitCodes:
    def test_usage_error_is_one(self, capsys):
        assert main(["detect", "--family", "weibull"]) == 1

    def test_missing_parameter_is_one(self, capsys):
        code, _, err = run(capsys, "detect", "--family", "gauss")
        assert code == 1 and "variance" in err

    def test_no_command_is_one(self, capsys):
        assert main([]) == 1

    def test_sample_parse_error_names_line(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1.0\nouch\n")
        code, _, err = run(capsys, "empirical", "--input", str(path))
        assert code == 1 and "line 2" in err

    def test_missing_sample_file_is_one(self, capsys, tmp_path):
        code, _, err = run(capsys, "empirical", "--input", str(tmp_path / "none.txt"))
        assert code == 1

    def test_moment_error_is_two(self, capsys):
        code, _, err = run(
            capsys, "kurtosis", "--family", "stable", "--alpha", "1.5",
            "--scale", "1", "--m", "2",
        )
        assert code == 2 and "variance" in err

    def test_positivity_error_is_two(self, capsys, tmp_path):
        # empirical CF cos(t) is negative at points of the default schedule
        path = tmp_path / "pm1.txt"
        path.write_text("1.0\n-1.0\n")
        code, _, err = run(capsys, "detect", "--input", str(path))
        assert code == 2

    def test_failed_assertion_is_three(self, capsys, monkeypatch):
        failing = BoundCheck(lhs=1.0, rhs=0.5, holds=False, m=4, r=3.0)
        monkeypatch.setattr(cli, "clt_bound_check", lambda *a, **k: failing)
        code, out, _ = run(
            capsys, "bound-check", "--family", "symgamma", "--shape", "1",
            "--m", "4", "--r", "3", "--assert",
        )
        assert code == 3
        assert json.loads(out)["result"]["holds"] is False

    def test_failed_inequality_without_assert_is_zero(self, capsys, monkeypatch):
        failing = BoundCheck(lhs=1.0, rhs=0.5, holds=False, m=4, r=3.0)
        monkeypatch.setattr(cli, "clt_bound_check", lambda *a, **k: failing)
        code, _, _ = run(
            capsys, "bound-check", "--family", "symgamma", "--shape", "1",
            "--m", "4", "--r", "3",
        )
        assert code == 0


class TestDeterminism:
    def test_repeated_runs_identical_result(self, capsys):
        argv = ["detect", "--family", "symgamma", "--shape", "1"]
        first = run_json(capsys, *argv)
        second = run_json(capsys, *argv)
        assert render_json(first["result"]) == render_json(second["result"])
        assert render_json(first["config"]) == render_json(second["config"])
