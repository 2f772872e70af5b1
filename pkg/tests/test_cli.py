"""Command-line surface: formats, exit codes, cache transparency."""

import json
import subprocess

import mpmath as mp
import pytest

from ballint.cli import EXIT_OK, EXIT_PRECISION, EXIT_USAGE, EXIT_VERIFY, main
from ballint.rationals import parse_rational


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("BALLINT_CACHE_DIR", str(tmp_path / "cache"))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSincCoeffs:
    def test_text_table(self, capsys):
        code, out, _ = run_cli(capsys, "sinc-coeffs", "--order", "2")
        assert code == EXIT_OK
        assert "-3/20" in out and "-13/1120" in out
        assert out.splitlines()[0].startswith("sinc coefficients, order 2")

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "sinc-coeffs", "--order", "4", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["kind"] == "coefficients"
        assert doc["unit"] == "sqrt(3*pi/2)"
        assert doc["coefficients"][4]["rational"] == "52791/3942400"
        # decimal column re-derivable from the exact rational and the unit
        with mp.workdps(40):
            unit = mp.sqrt(3 * mp.pi / 2)
            for entry in doc["coefficients"]:
                q = parse_rational(entry["rational"])
                want = mp.mpf(q.numerator) / q.denominator * unit
                assert abs(mp.mpf(entry["decimal"]) - want) < mp.mpf(10) ** -27

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "sinc-coeffs", "--order", "1", "--format", "csv")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "j,rational,decimal"
        assert lines[2].startswith("1,-3/20,")

    def test_cache_transparent_byte_for_byte(self, capsys):
        first = run_cli(capsys, "sinc-coeffs", "--order", "6")      # cold: computes, stores
        second = run_cli(capsys, "sinc-coeffs", "--order", "6")     # warm: loads
        bypass = run_cli(capsys, "sinc-coeffs", "--order", "6", "--no-cache")
        assert first == second == bypass
        assert "-124996631/10035200000" in first[1]

    def test_deeper_truncation_flag(self, capsys):
        base = run_cli(capsys, "sinc-coeffs", "--order", "3")
        deep = run_cli(capsys, "sinc-coeffs", "--order", "3", "--trunc", "9")
        assert base[0] == deep[0] == EXIT_OK
        # identical rationals either way; only the header names the order
        assert [l.split()[1] for l in base[1].splitlines()[1:]] == \
               [l.split()[1] for l in deep[1].splitlines()[1:]]

    def test_order_ceiling(self, capsys):
        code, _, err = run_cli(capsys, "sinc-coeffs", "--order", "13")
        assert code == EXIT_USAGE and "error:" in err

    def test_bad_trunc(self, capsys):
        code, _, err = run_cli(capsys, "sinc-coeffs", "--order", "3", "--trunc", "2")
        assert code == EXIT_USAGE and "--trunc" in err


class TestBesselCoeffs:
    def test_text_table(self, capsys):
        code, out, _ = run_cli(capsys, "bessel-coeffs", "--nu", "1", "--order", "3")
        assert code == EXIT_OK
        assert "-1/3" in out and "1/45" in out

    def test_json_nu_field(self, capsys):
        code, out, _ = run_cli(capsys, "bessel-coeffs", "--nu", "7/3", "--order", "2",
                               "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["nu"] == "7/3" and doc["pipeline"] == "bessel"

    def test_cache_transparent(self, capsys):
        first = run_cli(capsys, "bessel-coeffs", "--nu", "3/2", "--order", "4")
        second = run_cli(capsys, "bessel-coeffs", "--nu", "3/2", "--order", "4")
        assert first == second

    def test_nu_validation(self, capsys):
        code, _, err = run_cli(capsys, "bessel-coeffs", "--nu", "1/3", "--order", "2")
        assert code == EXIT_USAGE and "at least 1/2" in err
        code, _, err = run_cli(capsys, "bessel-coeffs", "--nu", "x", "--order", "2")
        assert code == EXIT_USAGE

    def test_order_ceiling(self, capsys):
        code, _, _ = run_cli(capsys, "bessel-coeffs", "--nu", "1", "--order", "9")
        assert code == EXIT_USAGE


class TestEval:
    def test_sinc_text(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "sinc", "--n", "5")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "sinc integral, n = 5"
        assert "abs_err_bound" in out

    def test_bessel_json(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "bessel", "--n", "2", "--nu", "1",
                               "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["pipeline"] == "bessel" and doc["nu"] == "1" and doc["n"] == 2
        assert abs(float(doc["value"]) - 4.0) < 1e-12

    def test_usage_errors(self, capsys):
        assert run_cli(capsys, "eval", "sinc", "--n", "1")[0] == EXIT_USAGE
        assert run_cli(capsys, "eval", "sinc", "--n", "5", "--nu", "1")[0] == EXIT_USAGE
        assert run_cli(capsys, "eval", "bessel", "--n", "5")[0] == EXIT_USAGE
        assert run_cli(capsys, "eval", "sinc", "--n", "5", "--format", "csv")[0] == EXIT_USAGE

    def test_cutoff_cap_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "eval", "bessel", "--n", "8", "--nu", "7/3",
                               "--cutoff-mult", "8")
        assert code == EXIT_USAGE and "evaluation cap" in err

    def test_precision_failure_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "eval", "sinc", "--n", "97", "--digits", "30",
                               "--max-refine", "0")
        assert code == EXIT_PRECISION
        assert "precision failure" in err and "best estimate" in err


class TestVerifyCommand:
    def test_reduction_suite(self, capsys, tmp_path):
        report = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "verify", "reduction", "--report", str(report))
        assert code == EXIT_OK
        assert out.splitlines()[0] == "verify reduction"
        doc = json.loads(report.read_text(encoding="utf-8"))
        assert doc["kind"] == "verify" and doc["suite"] == "reduction"
        assert all(r["status"] == "pass" for r in doc["reports"])

    def test_unwritable_report_path(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "verify", "reduction",
                               "--report", str(tmp_path / "no" / "dir" / "r.json"))
        assert code == EXIT_VERIFY and "could not write report" in err

    def test_unknown_suite_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "nonsense"])
        assert exc.value.code == EXIT_USAGE
        capsys.readouterr()


class TestAppendixCheck:
    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "appendix-check")
        assert code == EXIT_OK  # every mismatch is ledgered
        assert "fixture monomials: 50, mismatching: 13" in out
        assert "UNLEDGERED" not in out

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "appendix-check", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["kind"] == "appendix-check"
        assert doc["monomials"] == 50
        assert len(doc["mismatches"]) == 13
        assert doc["stale_ledger_entries"] == []
        assert {m["status"] for m in doc["mismatches"]} == {
            "truncation-bookkeeping", "denominator-misprint"}


class TestInstalledEntryPoint:
    def test_subprocess_invocation(self, tmp_path):
        proc = subprocess.run(
            ["ballint", "sinc-coeffs", "--order", "1", "--format", "csv"],
            capture_output=True, text=True,
            env={"PATH": "/usr/local/bin:/usr/bin:/bin",
                 "BALLINT_CACHE_DIR": str(tmp_path)},
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "j,rational,decimal"
