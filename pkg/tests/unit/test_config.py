"""Settings and logging setup."""

import json
import logging
import sys

import pytest
from pydantic import ValidationError

from pulseloop.cli import run
from pulseloop.config import Settings, load_settings, settings
from pulseloop.core.errors import ConfigError
from pulseloop.core.logging import get_logger, setup_logging


def test_defaults():
    s = Settings()
    assert s.APP_NAME == "pulseloop"
    assert s.STEPS >= 256
    assert s.STRONG_NOISE_STEPS >= s.STEPS


def test_environment_override(monkeypatch):
    monkeypatch.setenv("PULSELOOP_STEPS", "4096")
    monkeypatch.setenv("PULSELOOP_CYCLIC_TOL", "1e-8")
    s = Settings()
    assert s.STEPS == 4096
    assert s.CYCLIC_TOL == 1e-8


def test_coarse_grid_rejected():
    with pytest.raises(ValidationError):
        Settings(STEPS=128)


def test_unknown_log_format_rejected():
    with pytest.raises(ValidationError):
        Settings(LOG_FORMAT="xml")


def test_unit_tolerances():
    s = Settings()
    assert s.UNIT_TOL == 1e-12
    assert s.INPUT_UNIT_TOL == 1e-9


def test_invalid_environment_is_config_error(monkeypatch):
    monkeypatch.setenv("PULSELOOP_STEPS", "128")
    with pytest.raises(ConfigError) as exc:
        load_settings()
    assert exc.value.exit_code == 2
    assert "STEPS" in exc.value.message


def test_console_entry_exits_2_on_invalid_environment(monkeypatch, capsys):
    monkeypatch.setenv("PULSELOOP_STEPS", "not-a-number")
    monkeypatch.delitem(sys.modules, "pulseloop.cli.main", raising=False)
    monkeypatch.delitem(sys.modules, "pulseloop.config")
    assert run(["papercheck"]) == 2
    assert "PULSELOOP_" in capsys.readouterr().err


@pytest.fixture
def info_logging(capsys):
    setup_logging("INFO")
    yield
    setup_logging()


def test_json_log_line(info_logging, capsys, monkeypatch):
    monkeypatch.setattr(settings, "LOG_FORMAT", "json")
    setup_logging("INFO")
    get_logger("pulseloop.tests").info("propagated", extra={"run_id": "r1", "nodes": 257})
    line = capsys.readouterr().err.strip().splitlines()[-1]
    record = json.loads(line)
    assert record["message"] == "propagated"
    assert record["level"] == "INFO"
    assert record["logger"] == "pulseloop.tests"
    assert record["run_id"] == "r1"
    assert record["nodes"] == 257
    assert record["app_name"] == "pulseloop"


def test_run_id_stamped_on_records(info_logging, capsys, monkeypatch):
    monkeypatch.setattr(settings, "LOG_FORMAT", "json")
    setup_logging("INFO", run_id="abc123")
    get_logger("pulseloop.tests.run").info("swept", extra={"points": 9})
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["run_id"] == "abc123"
    assert record["points"] == 9


def test_cli_run_logs_carry_one_run_id(capsys, monkeypatch):
    monkeypatch.setattr(settings, "LOG_FORMAT", "json")
    assert run(["--log-level", "INFO", "phases", "--steps", "256", "--json"]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().err.strip().splitlines()]
    setup_logging()
    assert lines
    run_ids = {line["run_id"] for line in lines}
    assert len(run_ids) == 1
    assert len(run_ids.pop()) == 12


def test_stdout_stays_clean(info_logging, capsys):
    get_logger("pulseloop.tests").warning("noise")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "noise" in captured.err


def test_level_filter(capsys):
    setup_logging("ERROR")
    get_logger("pulseloop.tests").warning("hidden")
    assert "hidden" not in capsys.readouterr().err
    setup_logging()
    assert logging.getLogger("pulseloop").propagate is False
