import json
import subprocess
import sys


def run_cli(*argv, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "cyclosum", *argv],
        capture_output=True,
        text=True,
        **kwargs,
    )


class TestScalarCommands:
    def test_power_sum(self):
        res = run_cli("power-sum", "--n", "10", "--h", "4")
        assert res.returncode == 0
        assert res.stdout.strip() == "44"

    def test_cos_sum_rational_output(self):
        res = run_cli("cos-sum", "--n", "3", "--h", "2")
        assert res.returncode == 0
        assert res.stdout.strip() == "3/2"

    def test_sin_sum(self):
        res = run_cli("sin-sum", "--n", "4", "--h", "2")
        assert res.returncode == 0
        assert res.stdout.strip() == "2"

    def test_minpoly(self):
        res = run_cli("minpoly", "--n", "3")
        assert res.returncode == 0
        assert res.stdout.strip() == "1*t^2 + 1*t + 1/4"

    def test_mq(self):
        res = run_cli("mq", "--formula", "1 - t", "--n", "5")
        assert res.returncode == 0
        assert res.stdout.strip() == "25/16"

    def test_catalan_a(self):
        res = run_cli("catalan-a", "--n", "9", "--r", "2")
        assert res.returncode == 0
        assert res.stdout.strip() == "27/8"


class TestEvalAndEventual:
    def test_eval_energy(self):
        res = run_cli("eval", "--formula", "energy", "--n", "5")
        assert res.returncode == 0
        assert "value: 5" in res.stdout
        assert "mode: stable" in res.stdout

    def test_eval_below_threshold_is_usage_error(self):
        res = run_cli("eval", "--formula", "energy", "--n", "3")
        assert res.returncode == 2
        assert "below stable threshold" in res.stderr

    def test_eventual(self):
        res = run_cli("eventual", "--formula", "energy")
        assert res.returncode == 0
        assert res.stdout.strip() == "1/2*n^2 - 3/2*n"

    def test_eventual_product_case_refused(self):
        res = run_cli("eventual", "--formula", "p1 * prod(1 - t)")
        assert res.returncode == 2
        assert "polynomial case" in res.stderr

    def test_extract(self):
        res = run_cli("extract", "--formula", "1 + t", "--r", "2")
        assert res.returncode == 0
        assert res.stdout.strip() == "1/2*p1^2 - 1/2*p2"

    def test_file_input(self, tmp_path):
        path = tmp_path / "family.txt"
        path.write_text("# pair energy\nenergy\n", encoding="utf-8")
        res = run_cli("eval", "--file", str(path), "--n", "10")
        assert res.returncode == 0
        assert "value: 35" in res.stdout


class TestVerify:
    def test_pass(self):
        res = run_cli(
            "verify", "--formula", "energy", "--conjecture", "(n^2 - 3*n)/2"
        )
        assert res.returncode == 0
        assert "symbolic (all n >= 4): PASS" in res.stdout

    def test_below_threshold_mismatch(self):
        res = run_cli(
            "verify",
            "--formula",
            "energy",
            "--conjecture",
            "(n^2 - 3*n)/2",
            "--below-threshold",
        )
        assert res.returncode == 1
        assert "symbolic (all n >= 4): PASS" in res.stdout
        assert "n=2: expected -1, got 0 -> MISMATCH" in res.stdout
        assert "n=3: expected 0, got 0 -> pass" in res.stdout

    def test_symbolic_fail_shows_difference(self):
        res = run_cli("verify", "--formula", "energy", "--conjecture", "n^2")
        assert res.returncode == 1
        assert "FAIL" in res.stdout
        assert "difference:" in res.stdout

    def test_json_report(self):
        res = run_cli(
            "verify",
            "--formula",
            "energy",
            "--conjecture",
            "(n^2 - 3*n)/2",
            "--below-threshold",
            "--format",
            "json",
        )
        assert res.returncode == 1
        payload = json.loads(res.stdout)
        assert payload["symbolic_match"] is True
        assert payload["pass"] is False
        assert payload["per_level"][0]["n"] == 2


class TestSeriesAndOracle:
    def test_hseries_json(self):
        res = run_cli("hseries", "--n", "9", "--order", "7", "--format", "json")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["coefficients"][0] == "1"
        assert payload["coefficients"][7] == "-273/64"

    def test_hseries_tsv(self):
        res = run_cli("hseries", "--n", "4", "--order", "3", "--format", "tsv")
        assert res.returncode == 0
        lines = dict(line.split("\t") for line in res.stdout.strip().splitlines())
        assert lines["n"] == "4"
        assert json.loads(lines["coefficients"]) == ["1", "-1", "1", "-1"]

    def test_oracle(self):
        res = run_cli("oracle", "--formula", "h(6)", "--n", "9", "--format", "json")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["exact"] == "273/64"
        assert payload["pass"] is True

    def test_oracle_custom_precision(self):
        res = run_cli(
            "oracle",
            "--formula",
            "energy",
            "--n",
            "12",
            "--precision",
            "128",
            "--tolerance",
            "1/1000000000000",
        )
        assert res.returncode == 0


class TestErrors:
    def test_unknown_command(self):
        res = run_cli("frobnicate")
        assert res.returncode == 2

    def test_missing_required_flag(self):
        res = run_cli("power-sum", "--n", "5")
        assert res.returncode == 2

    def test_parse_error_is_exit_2(self):
        res = run_cli("eval", "--formula", "p1 +", "--n", "5")
        assert res.returncode == 2
        assert "error:" in res.stderr
        assert "column" in res.stderr

    def test_missing_formula_source(self):
        res = run_cli("eval", "--n", "5")
        assert res.returncode == 2
        assert "missing --formula or --file" in res.stderr
