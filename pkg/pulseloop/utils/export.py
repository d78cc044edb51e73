"""CSV and JSON writers for trajectories and sweep tables"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, TextIO, Union

import numpy as np

from pulseloop.core.logging import get_logger
from pulseloop.models.trajectory import Trajectory
from pulseloop.schemas.reports import SWEEP_COLUMNS, ScenarioReport

logger = get_logger(__name__)

TRAJECTORY_COLUMNS = ["t", "nx", "ny", "nz", "re_c0", "im_c0", "re_c1", "im_c1"]

# Start state |+y> = (1, i)/sqrt 2 in the c0-real gauge; the published curves carry an extra e^{i pi/4}
REFERENCE_GAUGE_PHASE = 0.25 * np.pi
GAUGE_NOTE = (
    "states use the gauge with c0 real and >= 0 at the start; "
    "the reference gauge multiplies every state by e^{i pi/4}"
)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def trajectory_rows(traj: Trajectory, gauge_phase: float = 0.0) -> Iterable[List[str]]:
    states = np.exp(1j * gauge_phase) * traj.states
    for t, n, c in zip(traj.times, traj.bloch, states):
        yield [_fmt(t), _fmt(n[0]), _fmt(n[1]), _fmt(n[2]), _fmt(c[0].real), _fmt(c[0].imag), _fmt(c[1].real), _fmt(c[1].imag)]


def write_trajectory_csv(traj: Trajectory, out: Union[str, Path, TextIO], gauge_phase: float = 0.0) -> None:
    """One row per node: t,nx,ny,nz,re_c0,im_c0,re_c1,im_c1 with 12 significant digits"""
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_trajectory_csv(traj, fh, gauge_phase)
        logger.info("trajectory written", extra={"path": str(out), "rows": len(traj)})
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRAJECTORY_COLUMNS)
    writer.writerows(trajectory_rows(traj, gauge_phase))


def write_sweep_csv(reports: List[ScenarioReport], out: Union[str, Path, TextIO]) -> None:
    """One row per report in SWEEP_COLUMNS order"""
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_sweep_csv(reports, fh)
        logger.info("sweep table written", extra={"path": str(out), "rows": len(reports)})
        return
    writer = csv.DictWriter(out, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        row = report.to_row()
        writer.writerow({k: _fmt(v) if isinstance(v, float) else v for k, v in row.items()})


def meta_path(out: Union[str, Path]) -> Path:
    out = Path(out)
    return out.with_name(out.name + ".meta.json")


def write_meta(out: Union[str, Path], meta: Dict[str, Any]) -> Path:
    """<out>.meta.json sidecar recording the run inputs and the gauge convention"""
    path = meta_path(out)
    path.write_text(json.dumps({**meta, "gauge_note": GAUGE_NOTE}, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
