import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from starbundle import Chart, EquivariantFunction
from starbundle.checks import CheckResult
from starbundle.cli import main
from starbundle.emit import emit_json
from starbundle.scalars import HBAR_OVER_I

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "quantize_normal_qp.json": [
        "quantize", "--product", "normal", "--dim", "1",
        "q1*p1", "--psi", "generic", "--format", "json",
    ],
    "quantize_antinormal_q.json": [
        "quantize", "--product", "antinormal", "--rep", "momentum", "q1",
        "--format", "json",
    ],
    "quantize_wick_zzb.json": [
        "quantize", "--product", "wick", "--chart", "bargmann", "z*zb",
        "--format", "json",
    ],
    "bullet_normal_p.json": [
        "bullet", "--product", "normal", "p1", "psi(0)*e(1)", "--format", "json",
    ],
    "extract_normal_qp.json": [
        "extract", "--product", "normal", "--rep", "position", "q1*p1",
        "--format", "json",
    ],
    "extract_antinormal_q.json": [
        "extract", "--product", "antinormal", "--rep", "momentum", "q1",
        "--format", "json",
    ],
}


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestCommands:
    def test_quantize_normal_text(self):
        code, out, _ = run_cli(["quantize", "--product", "normal", "--dim", "1",
                                "q1*p1", "--psi", "generic"])
        assert code == 0
        assert out.strip() == "(hbar/i)*q1*psi(1)*e(1)"

    def test_star_moyal_text(self):
        code, out, _ = run_cli(["star", "--product", "moyal", "--dim", "1", "p1", "q1"])
        assert code == 0
        assert out.strip() == "p1*q1 + (1/2)*(hbar/i)"

    def test_star_is_chart_checked(self):
        code, _, err = run_cli(["star", "--product", "wick", "p1", "q1"])
        assert code == 3
        assert "bargmann" in err

    def test_extract_weyl_text(self):
        code, out, _ = run_cli(["extract", "--product", "moyal", "--rep", "position",
                                "q1*p1"])
        assert code == 0
        assert out.strip() == "(1/2)*(hbar/i) + (hbar/i)*q1*d/dq1"

    def test_quantize_concrete_component(self):
        code, out, _ = run_cli(["quantize", "--product", "normal", "p1",
                                "--psi", "q1^2"])
        assert code == 0
        assert out.strip() == "2*(hbar/i)*q1*e(1)"

    def test_prequantize_generic(self):
        code, out, _ = run_cli(["prequantize", "p1"])
        assert code == 0
        assert "psi(0,1)" in out  # the dpsi/dq jet of the (p,q) family

    def test_bracket_command(self):
        code, out, _ = run_cli(["bracket", "p1", "q1"])
        assert code == 0
        assert out.strip() == "1"

    def test_parse_error_exit_code(self):
        code, _, err = run_cli(["star", "p1", "q1 +"])
        assert code == 2
        assert "error" in err

    def test_unknown_variable_exit_code(self):
        code, _, err = run_cli(["star", "p1", "p2"])
        assert code == 2
        assert "out of range" in err

    def test_polarization_violation_exit_code(self):
        code, _, err = run_cli(["quantize", "--product", "antinormal",
                                "--rep", "position", "p1"])
        assert code == 5
        assert "polarization" in err.lower()

    def test_check_single_suite(self):
        code, out, _ = run_cli(["check", "--suite", "inversep", "--seed", "7"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "all 3 properties passed"
        assert all(line.startswith("PASS") for line in lines[:-1])

    def test_check_unknown_suite(self):
        code, _, err = run_cli(["check", "--suite", "nonsense"])
        assert code == 3
        assert "unknown suite" in err

    def test_check_reports_failures(self, monkeypatch):
        from starbundle import checks

        def broken(seed=0):
            return [CheckResult("demo", "always-fails", False, "counterexample: q1")]

        monkeypatch.setitem(checks.SUITES, "demo", broken)
        code, out, _ = run_cli(["check", "--suite", "demo"])
        assert code == 4
        assert "FAIL demo.always-fails" in out
        assert "counterexample: q1" in out

    def test_check_json_format(self):
        code, out, _ = run_cli(["check", "--suite", "agarwal", "--format", "json"])
        assert code == 0
        document = json.loads(out)
        assert document["passed"] is True
        assert all(entry["ok"] for entry in document["results"])

    def test_check_runs_are_reproducible(self):
        first = run_cli(["check", "--suite", "adjoint,inversep", "--seed", "11"])
        second = run_cli(["check", "--suite", "adjoint,inversep", "--seed", "11"])
        assert first == second


class TestJsonEmission:
    def test_hbar_over_i_scalar(self):
        chart = Chart.real(1)
        doc = json.loads(emit_json(chart.constant(HBAR_OVER_I)))
        assert doc["terms"] == [{
            "re": "0", "im": "-1", "hbar": 1, "monomial": {}, "jet": {},
            "theta_weight": 0, "weight_factor": None,
        }]

    def test_wave_term_carries_weight(self):
        chart = Chart.real(1)
        wave = EquivariantFunction(chart, chart.var("p1").terms, theta_weight=1)
        doc = json.loads(emit_json(wave))
        assert doc["terms"] == [{
            "re": "1", "im": "0", "hbar": 0, "monomial": {"p1": 1}, "jet": {},
            "theta_weight": 1, "weight_factor": None,
        }]

    def test_weyl_operator_terms(self):
        code, out, _ = run_cli(["extract", "--product", "moyal", "--rep", "position",
                                "q1*p1", "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        derivatives = [term["derivative"] for term in doc["terms"]]
        assert derivatives == [[0], [1]]

    def test_emission_injective_on_distinct_functions(self):
        chart = Chart.real(1)
        a = emit_json(chart.var("p1"))
        b = emit_json(chart.var("q1"))
        assert a != b


class TestGoldenFiles:
    @pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
    def test_byte_stable_against_golden(self, name):
        code, out, _ = run_cli(GOLDEN_CASES[name])
        assert code == 0
        assert out == (GOLDEN / name).read_text()

    @pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
    def test_repeated_runs_identical(self, name):
        first = run_cli(GOLDEN_CASES[name])
        second = run_cli(GOLDEN_CASES[name])
        assert first == second
