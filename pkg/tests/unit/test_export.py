"""CSV and sidecar writers."""

import csv
import io
import json

import numpy as np
import pytest

from pulseloop.models.enums import ReportStatus
from pulseloop.schemas.reports import SWEEP_COLUMNS, ScenarioReport
from pulseloop.utils.export import (
    GAUGE_NOTE,
    REFERENCE_GAUGE_PHASE,
    TRAJECTORY_COLUMNS,
    meta_path,
    write_meta,
    write_sweep_csv,
    write_trajectory_csv,
)


def _rows(text: str):
    return list(csv.reader(io.StringIO(text)))


def test_trajectory_csv_layout(ideal_trajectory):
    buf = io.StringIO()
    write_trajectory_csv(ideal_trajectory, buf)
    rows = _rows(buf.getvalue())
    assert rows[0] == TRAJECTORY_COLUMNS
    assert len(rows) == len(ideal_trajectory) + 1
    first = [float(x) for x in rows[1]]
    last = [float(x) for x in rows[-1]]
    assert first[:4] == pytest.approx([0.0, 0.0, 1.0, 0.0], abs=1e-12)
    assert last[0] == 1.0
    assert last[1:4] == pytest.approx([0.0, 1.0, 0.0], abs=1e-8)


def test_reference_gauge(ideal_trajectory):
    buf = io.StringIO()
    write_trajectory_csv(ideal_trajectory, buf, REFERENCE_GAUGE_PHASE)
    first = [float(x) for x in _rows(buf.getvalue())[1]]
    # e^{i pi/4} (1, i)/sqrt 2
    assert first[4:] == pytest.approx([0.5, 0.5, -0.5, 0.5], abs=1e-12)


def test_bloch_columns_ignore_gauge(ideal_trajectory):
    plain, shifted = io.StringIO(), io.StringIO()
    write_trajectory_csv(ideal_trajectory, plain)
    write_trajectory_csv(ideal_trajectory, shifted, 1.3)
    for a, b in zip(_rows(plain.getvalue())[1:], _rows(shifted.getvalue())[1:]):
        assert a[:4] == b[:4]


def test_decimated_file(ideal_trajectory, tmp_path):
    out = tmp_path / "traj.csv"
    write_trajectory_csv(ideal_trajectory.decimate(256), out)
    rows = _rows(out.read_text())
    assert float(rows[-1][0]) == 1.0
    assert len(rows) == 1 + 9


def test_meta_sidecar(tmp_path):
    out = tmp_path / "run.csv"
    path = write_meta(out, {"steps": 2048, "sequence": "90x 180y 90x"})
    assert path == meta_path(out)
    assert path.name == "run.csv.meta.json"
    meta = json.loads(path.read_text())
    assert meta["steps"] == 2048
    assert meta["gauge_note"] == GAUGE_NOTE


def test_sweep_csv():
    reports = [
        ScenarioReport(
            scenario="fluctuated_piecewise",
            inputs={"f0": 0.1, "g0": 0.0, "xi": 5, "eta": 5},
            outputs={"fidelity": 1.0, "gamma_geometric": -np.pi / 2, "final_bloch": [0.0, 1.0, 0.0]},
        ).finalize(),
        ScenarioReport(
            scenario="fluctuated_piecewise",
            inputs={"f0": 0.5, "g0": 0.0, "xi": 5, "eta": 5},
            status=ReportStatus.ERROR,
            message="evolution is not cyclic",
        ),
    ]
    buf = io.StringIO()
    write_sweep_csv(reports, buf)
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert list(rows[0]) == SWEEP_COLUMNS
    assert rows[0]["status"] == "reported"
    assert float(rows[0]["gamma_geometric"]) == pytest.approx(-np.pi / 2, abs=1e-11)
    assert rows[0]["final_ny"] == "1"
    assert rows[1]["status"] == "error"
    assert rows[1]["gamma_total"] == ""
    assert rows[1]["message"] == "evolution is not cyclic"
