from __future__ import annotations

import json
from pathlib import Path

import pytest

from app import build_parser, build_request, load_commands, main, parse_field
from src.components.linear import FieldSpec
from src.pipeline import CONFIG_ENV, CommandRequest, load_config, run_command


ROOT = Path(__file__).resolve().parents[1]
CONFIG_FILE = "config/settings.toml"


@pytest.fixture(scope="module")
def commands():
    return load_commands()


def _request(command, inputs, **bounds):
    defaults = {"gldim_bound": 3, "cap": 3, "max_power": 3, "max_s": 3, "length": 4, "n": 1, "seed": 0}
    defaults.update(bounds)
    return CommandRequest(command, list(inputs), defaults, {"samples": 3, "path_cap": 200})


# --- configuration ------------------------------------------------------------


def test_config_tables(monkeypatch, tmp_path):
    config = load_config(ROOT / CONFIG_FILE)
    assert config["bounds"]["cap"] == 4
    assert config["output"]["format"] == "text"

    partial = tmp_path / "partial.toml"
    partial.write_text("[bounds]\ncap = 2\n", encoding="utf-8")
    with pytest.raises(KeyError):
        load_config(partial)
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "absent.toml")

    monkeypatch.setenv(CONFIG_ENV, str(ROOT / CONFIG_FILE))
    assert load_config()["sampling"]["seed"] == 0


def test_field_flag():
    assert parse_field("Q") == FieldSpec.rationals()
    assert parse_field("7") == FieldSpec.prime(7)
    assert parse_field("F5") == FieldSpec.prime(5)


def test_request_prefers_flags_over_config(commands):
    config = load_config(ROOT / CONFIG_FILE)
    args = build_parser(list(commands)).parse_args(["coherence", "k", "free:1", "--cap", "6", "--seed", "3", "--field", "5"])
    request = build_request(args, config)
    assert request.bounds["cap"] == 6
    assert request.bounds["gldim_bound"] == config["bounds"]["gldim_bound"]
    assert request.bounds["seed"] == 3
    assert request.field_spec == FieldSpec.prime(5)
    assert request.format == "text"


# --- commands -----------------------------------------------------------------


def test_every_command_is_registered(commands):
    expected = {
        "validate", "resolve", "tor", "ext",
        "purity", "stabilize", "lemma34",
        "graded-kernel", "coherence", "graded-resolve",
        "theta", "preprojective", "tau", "eta",
    }
    assert expected <= set(commands)


def test_free_algebra_coherence(commands):
    outcome = run_command(_request("coherence", ["k", "free:1"], gldim_bound=2), commands)
    assert outcome.exit_code == 0
    assert outcome.report.verdict == "certified-flat-path"
    assert outcome.report.field == "QQ"
    assert len(outcome.report.tables["maps"]) == 3


def test_impure_bimodule_is_negative(commands):
    outcome = run_command(_request("purity", ["dual-numbers", "top"], max_power=2, gldim_bound=4), commands)
    assert outcome.exit_code == 1
    assert outcome.report.verdict == "impure"
    assert outcome.report.result["witness"]["stage"] == 2

    cert = run_command(_request("coherence", ["dual-numbers", "top"]), commands)
    assert cert.exit_code == 1
    assert cert.report.verdict == "hypothesis-failure"


def test_theta_failure_is_a_verdict(commands):
    outcome = run_command(_request("theta", ["kronecker"], n=0), commands)
    assert outcome.exit_code == 1
    assert outcome.report.verdict == "theta-not-concentrated"
    assert outcome.report.result["witness"]["degree"] == 1


def test_kronecker_theta_command(commands):
    outcome = run_command(_request("theta", ["kronecker"]), commands)
    assert outcome.exit_code == 0
    assert outcome.report.result["dim"] == 12
    assert outcome.report.tables["split"][0] == {"vertex": 1, "theta_e": 5, "e_theta": 7}


def test_validate_reports_global_dimension(commands):
    outcome = run_command(_request("validate", ["a3-rad2", "S1"]), commands)
    assert outcome.exit_code == 0
    assert outcome.report.result["radical_dim"] == 2


def test_input_errors_exit_with_two(commands, tmp_path):
    missing = run_command(_request("resolve", [str(tmp_path / "absent.json"), "S1"]), commands)
    assert missing.exit_code == 2
    assert missing.report is None
    assert "absent.json" in missing.error

    assert run_command(_request("nonsense", ["k"]), commands).exit_code == 2
    assert run_command(_request("resolve", ["kronecker"]), commands).exit_code == 2
    assert run_command(_request("coherence", ["kronecker", "S1"]), commands).exit_code == 2


def test_reports_are_deterministic(commands):
    first = run_command(_request("lemma34", ["kronecker", "regular"], gldim_bound=4), commands).report
    second = run_command(_request("lemma34", ["kronecker", "regular"], gldim_bound=4), commands).report
    assert first.to_json() == second.to_json()
    assert first.verdict == "pure"


# --- entry point --------------------------------------------------------------


def test_main_writes_reports(monkeypatch, tmp_path):
    monkeypatch.setenv(CONFIG_ENV, str(ROOT / CONFIG_FILE))
    out = tmp_path / "theta.json"
    xlsx = tmp_path / "theta.xlsx"
    code = main(["theta", "kronecker", "-n", "1", "--format", "json", "--out", str(out), "--xlsx", str(xlsx)])
    assert code == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["verdict"] == "concentrated"
    assert payload["result"]["split"] == {"right": [5, 7], "left": [7, 5]}
    assert xlsx.exists()


def test_main_reports_input_errors(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv(CONFIG_ENV, str(ROOT / CONFIG_FILE))
    assert main(["resolve", str(tmp_path / "absent.json")]) == 2
    assert "error:" in capsys.readouterr().err


def test_main_needs_a_config(monkeypatch, tmp_path):
    monkeypatch.setenv(CONFIG_ENV, str(tmp_path / "absent.toml"))
    assert main(["validate", "k"]) == 2
