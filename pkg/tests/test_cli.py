"""Scenario-runner CLI tests: exit codes, outputs, determinism."""

import csv
import json
import os
import stat

import pytest

from phasedec.cli import (
    EXIT_ASSERTION,
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_OK,
    EXIT_VALIDATION,
    main,
)
from phasedec.scenarios import SCENARIO_NAMES


def write_config(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_list_scenarios(capsys):
    assert main(["list-scenarios"]) == EXIT_OK
    out = capsys.readouterr().out.split()
    assert set(out) == set(SCENARIO_NAMES)


def test_print_defaults_is_json_with_all_scenarios(capsys):
    assert main(["print-defaults"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == set(SCENARIO_NAMES)
    assert payload["decoherence-lorentzian"]["kernel"]["gamma"] == 0.1


def test_missing_config_file_is_io_error(tmp_path, capsys):
    code = main(["run", "--config", str(tmp_path / "nope.json")])
    assert code == EXIT_IO


def test_malformed_json_is_config_error(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{scenario: nope", encoding="utf-8")
    assert main(["run", "--config", str(cfg)]) == EXIT_CONFIG


def test_non_object_config_is_config_error(tmp_path):
    cfg = tmp_path / "list.json"
    cfg.write_text("[1, 2, 3]", encoding="utf-8")
    assert main(["run", "--config", str(cfg)]) == EXIT_CONFIG


def test_unknown_scenario_is_validation_error(tmp_path):
    cfg = write_config(tmp_path / "cfg.json", {"scenario": "does-not-exist"})
    assert main(["run", "--config", cfg]) == EXIT_VALIDATION


def test_unknown_option_is_validation_error(tmp_path):
    cfg = write_config(
        tmp_path / "cfg.json", {"scenario": "moyal-convergence", "grdi": {"count": 65}}
    )
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "out")]) == EXIT_VALIDATION


def test_bad_parameter_value_is_validation_error(tmp_path):
    cfg = write_config(tmp_path / "cfg.json", {"scenario": "moyal-convergence", "hbar": -1.0})
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "out")]) == EXIT_VALIDATION


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory write bits")
def test_unwritable_output_is_io_error(tmp_path):
    cfg = write_config(tmp_path / "cfg.json", {"scenario": "moyal-convergence"})
    locked = tmp_path / "locked"
    locked.mkdir()
    locked.chmod(stat.S_IRUSR | stat.S_IXUSR)
    try:
        code = main(["run", "--config", cfg, "--out", str(locked / "sub")])
    finally:
        locked.chmod(stat.S_IRWXU)
    assert code == EXIT_IO


def test_failing_assertion_exit_code_and_report(tmp_path, capsys):
    # truncating the series below the first bracket correction leaves no
    # measurable deviation, so the slope assertion must fail with code 3
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "moyal-convergence", "truncation_order": 2, "grid": {"count": 65}},
    )
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == EXIT_ASSERTION
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is False
    assert report["assertions"]["bracket_slope_second_order"]["passed"] is False
    assert "[FAIL]" in capsys.readouterr().out


def test_run_writes_report_and_curves(tmp_path, capsys):
    # the fast scenario exercises the full output contract
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "moyal-convergence", "grid": {"count": 65}},
    )
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True
    assert "assertions" in report and report["scenario"] == "moyal-convergence"
    meta = json.loads((out / "run_meta.json").read_text())
    assert "generated_at" in meta
    with (out / "convergence.csv").open(newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["hbar", "product_error", "bracket_error"]
    assert len(rows) == 4
    stdout = capsys.readouterr().out
    assert "[pass]" in stdout


def test_reports_are_byte_identical_across_runs(tmp_path):
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "limit-positivity", "n_states": 3, "seed": 7,
         "spectral_grid": {"omega_count": 41}, "wigner_axis": {"count": 97}},
    )
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", cfg, "--out", str(out1)]) == EXIT_OK
    assert main(["run", "--config", cfg, "--out", str(out2)]) == EXIT_OK
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()
    for name in out1.glob("*.csv"):
        assert name.read_bytes() == (out2 / name.name).read_bytes()


def test_seed_changes_sampled_states_but_not_verdict(tmp_path):
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "limit-positivity", "n_states": 3,
         "spectral_grid": {"omega_count": 41}, "wigner_axis": {"count": 97}},
    )
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", cfg, "--out", str(out1), "--seed", "1"]) == EXIT_OK
    assert main(["run", "--config", cfg, "--out", str(out2), "--seed", "2"]) == EXIT_OK
    r1 = json.loads((out1 / "report.json").read_text())
    r2 = json.loads((out2 / "report.json").read_text())
    assert r1["seed"] == 1 and r2["seed"] == 2
    assert r1["passed"] and r2["passed"]
    assert r1["worst_minimum"] != r2["worst_minimum"]


def test_kernel_family_selection(tmp_path):
    # a polynomial spectrum also has a half-line edge, so the pole-free
    # scenario classifies it as non-exponential too
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "decoherence-polefree",
         "kernel": {"family": "custom-polynomial", "coefficients": [1.0], "decay": 1.2},
         "spectral_grid": {"omega_count": 501, "omega_max": 10.0}},
    )
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["kernel"]["family"] == "custom-polynomial"
    assert report["model"] in ("power_law", "none")


def test_kernel_family_mismatch_is_validation_error(tmp_path):
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "decoherence-lorentzian", "kernel": {"family": "polefree"}},
    )
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == EXIT_VALIDATION


def test_unknown_kernel_family_is_validation_error(tmp_path):
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "decoherence-polefree", "kernel": {"family": "cauchy"}},
    )
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == EXIT_VALIDATION


def test_unknown_kernel_parameter_is_validation_error(tmp_path):
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "decoherence-lorentzian",
         "kernel": {"family": "lorentzian", "gamm": 0.2}},
    )
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == EXIT_VALIDATION


def test_infinite_t_dec_serializes_as_strict_json(tmp_path):
    # pole-free decay has no finite decoherence time; the report must stay
    # parseable by strict (non-Python) JSON readers
    cfg = write_config(
        tmp_path / "cfg.json",
        {"scenario": "decoherence-polefree",
         "spectral_grid": {"omega_count": 301, "omega_max": 10.0},
         "times": {"start": 1.0, "stop": 60.0, "count": 60, "spacing": "log"}},
    )
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == EXIT_OK
    text = (out / "report.json").read_text()
    assert "Infinity" not in text and "NaN" not in text

    def reject(_):
        raise AssertionError("non-RFC constant leaked into report.json")

    report = json.loads(text, parse_constant=reject)
    assert report["t_dec"] == "inf"


def test_hbar_override(tmp_path):
    # default 193-point axis keeps the oscillatory phase guard happy at hbar = 0.5
    cfg = write_config(tmp_path / "cfg.json", {"scenario": "wigner-negativity"})
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out), "--hbar", "0.5"]) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["hbar"] == 0.5
    assert report["target_minimum"] == pytest.approx(-2.0 / 3.141592653589793, rel=1e-12)
