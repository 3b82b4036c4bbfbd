import argparse
import json

import pytest

from rmx import BudgetExceeded, UsageError, run_suites
from rmx.cli import _parse_complex, main


def small(**kw):
    base = dict(suite="scalar", samples=1, n_max=3)
    base.update(kw)
    return run_suites(**base)


class TestRunSuites:
    def test_report_shape_and_config_echo(self):
        rep = small()
        assert rep["schema_version"] == 1
        cfg = rep["config"]
        assert cfg["suite"] == "scalar"
        assert cfg["site_dim"] == 2
        assert cfg["n_max"] == 3
        assert cfg["samples"] == 1
        assert cfg["seed"] == 12345
        assert cfg["deterministic"] is True
        s = rep["summary"]
        assert s["total"] == len(rep["records"])
        assert s["executed"] + s["skipped"] == s["total"]
        assert s["passed"] + s["failed"] == s["executed"]
        assert s["failed"] == 0

    def test_records_sorted_and_json_clean(self):
        rep = small(kind="all")
        keys = [
            (r["suite"], r["kind"], r["n"] or 0, r["case_id"])
            for r in rep["records"]
        ]
        assert keys == sorted(keys)
        # round-trips through json without custom encoders
        blob = json.dumps(rep)
        assert json.loads(blob)["summary"] == rep["summary"]

    def test_scalar_suite_runs_every_kind(self):
        rep = small(kind="all")
        kinds = {r["kind"] for r in rep["records"]}
        assert kinds == {"rational", "trigonometric", "elliptic"}
        assert all(not r["skipped"] for r in rep["records"])

    def test_trigonometric_matrix_suites_are_skipped(self):
        rep = run_suites(suite="rmatrix-basic", kind="trigonometric",
                         samples=1, n_max=3)
        assert rep["summary"]["executed"] == 0
        assert rep["summary"]["skipped"] == len(rep["records"]) > 0
        for r in rep["records"]:
            assert r["passed"] is None
            assert "trigonometric" in r["reason"]

    def test_all_suites_pass_at_small_size(self):
        rep = run_suites(samples=1, n_max=3)
        assert rep["summary"]["failed"] == 0
        assert rep["summary"]["executed"] > 0
        suites = {r["suite"] for r in rep["records"]}
        assert suites == {"scalar", "rmatrix-basic", "nth-order", "applications"}

    def test_tol_override_can_force_failure(self):
        rep = run_suites(suite="rmatrix-basic", kind="rational", samples=1,
                         n_max=3, tol_overrides={"unitarity": 1e-30})
        failures = [r for r in rep["records"] if r["passed"] is False]
        assert failures
        assert all("unitarity" in r["case_id"] for r in failures)
        assert rep["summary"]["failed"] == len(failures)

    def test_budget_guard(self):
        with pytest.raises(BudgetExceeded):
            run_suites(site_dim=3, n_max=9)

    def test_option_validation(self):
        with pytest.raises(UsageError):
            run_suites(suite="bogus")
        with pytest.raises(UsageError):
            run_suites(kind="bogus")
        with pytest.raises(UsageError):
            run_suites(tau=1.0)
        with pytest.raises(UsageError):
            run_suites(samples=0)
        with pytest.raises(UsageError):
            run_suites(n_max=1)

    def test_deterministic_repeat_is_identical(self):
        a = small(samples=2)
        b = small(samples=2)
        a.pop("elapsed_seconds")
        b.pop("elapsed_seconds")
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_nondeterministic_runs_reseed(self):
        a = run_suites(suite="scalar", samples=1, n_max=2, deterministic=False)
        b = run_suites(suite="scalar", samples=1, n_max=2, deterministic=False)
        assert a["config"]["seed"] != b["config"]["seed"]

    def test_parallel_matches_serial(self):
        kw = dict(suite="nth-order", kind="rational", samples=1, n_max=3)
        ser = run_suites(parallel=False, **kw)
        par = run_suites(parallel=True, **kw)
        assert json.dumps(ser["records"]) == json.dumps(par["records"])

    def test_fixed_hbar_is_used_and_echoed(self):
        rep = run_suites(suite="rmatrix-basic", kind="elliptic", samples=1,
                         n_max=3, hbar=0.13 + 0.08j)
        assert rep["config"]["hbar"] == {"re": 0.13, "im": 0.08}
        assert rep["summary"]["failed"] == 0


class TestMain:
    def test_pass_run_and_report_file(self, tmp_path, capsys):
        out_file = tmp_path / "report.json"
        code = main(["verify", "--suite", "scalar", "--samples", "1",
                     "--n-max", "3", "--report", str(out_file)])
        assert code == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out
        assert " 0 failed" in out
        data = json.loads(out_file.read_text())
        assert data["schema_version"] == 1
        assert data["summary"]["failed"] == 0

    def test_tol_flag_forces_failure_exit(self, capsys):
        code = main(["verify", "--suite", "rmatrix-basic", "--kind",
                     "rational", "--samples", "1", "--n-max", "3",
                     "--tol.unitarity", "1e-30"])
        assert code == 1
        assert "[FAIL]" in capsys.readouterr().out

    def test_usage_errors_exit_two(self, capsys):
        assert main(["verify", "--n-max", "1"]) == 2
        assert "error" in capsys.readouterr().err
        assert main(["verify", "--n-max", "9", "--N", "3"]) == 2
        assert "budget" in capsys.readouterr().err

    def test_config_file_defaults_and_flag_precedence(self, tmp_path, capsys):
        cfg = tmp_path / "verify.cfg"
        cfg.write_text(
            "# sweep configuration\n"
            "suite = rmatrix-basic\n"
            "kind = rational\n"
            "samples = 1\n"
            "n-max = 3\n"
        )
        out_file = tmp_path / "r1.json"
        code = main(["verify", "--config", str(cfg), "--report", str(out_file)])
        assert code == 0
        assert json.loads(out_file.read_text())["config"]["kind"] == "rational"

        out_file2 = tmp_path / "r2.json"
        code = main(["verify", "--config", str(cfg), "--kind", "elliptic",
                     "--report", str(out_file2)])
        assert code == 0
        assert json.loads(out_file2.read_text())["config"]["kind"] == "elliptic"
        capsys.readouterr()

    def test_config_file_tolerance_override(self, tmp_path, capsys):
        cfg = tmp_path / "verify.cfg"
        cfg.write_text(
            "suite = rmatrix-basic\nkind = rational\nsamples = 1\n"
            "n-max = 3\ntol.unitarity = 1e-30\n"
        )
        assert main(["verify", "--config", str(cfg)]) == 1
        capsys.readouterr()

    def test_bad_config_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "verify.cfg"
        cfg.write_text("bogus = 3\n")
        assert main(["verify", "--config", str(cfg)]) == 2
        err = capsys.readouterr().err
        assert "bogus" in err

    def test_skip_lines_are_printed(self, capsys):
        code = main(["verify", "--suite", "applications", "--kind",
                     "trigonometric", "--samples", "1", "--n-max", "3"])
        assert code == 0
        assert "[SKIP]" in capsys.readouterr().out


class TestComplexParsing:
    def test_accepts_i_suffix(self):
        assert _parse_complex("0.2+1.3i") == complex(0.2, 1.3)
        assert _parse_complex("2i") == 2j
        assert _parse_complex("-0.4") == complex(-0.4, 0)

    def test_rejects_garbage(self):
        with pytest.raises(argparse.ArgumentTypeError):
            _parse_complex("half past three")
