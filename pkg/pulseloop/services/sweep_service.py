"""Parameter sweeps over (f0, g0, xi, eta) for one scenario"""

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from pulseloop.config import settings
from pulseloop.core.errors import ConfigError
from pulseloop.core.logging import get_logger
from pulseloop.models.enums import ReportStatus, ScenarioKind
from pulseloop.models.trajectory import GridSpec
from pulseloop.schemas.config import SweepConfig
from pulseloop.schemas.reports import ScenarioReport
from pulseloop.services.experiment_service import (
    run_case_iii,
    run_fluctuated_composite,
    run_ha_hb_comparison,
    run_ideal_composite,
    two_level_profile,
    uncorrelated_profiles,
)
from pulseloop.services.fluctuation_service import global_sine_profile, piecewise_sine_profile

logger = get_logger(__name__)

SweepPoint = Tuple[ScenarioKind, float, float, int, int, Optional[GridSpec]]


def run_point(scenario: ScenarioKind, f0: float, g0: float, xi: int, eta: int, grid: Optional[GridSpec] = None) -> ScenarioReport:
    """Run a single grid point; failures come back as an error report"""
    inputs = {"f0": f0, "g0": g0, "xi": xi, "eta": eta}
    try:
        if scenario == ScenarioKind.IDEAL_COMPOSITE:
            report = run_ideal_composite(grid)
        elif scenario == ScenarioKind.FLUCTUATED_PIECEWISE:
            report = run_fluctuated_composite(piecewise_sine_profile(f0, g0, xi, eta), grid)
        elif scenario == ScenarioKind.FLUCTUATED_GLOBAL:
            report = run_fluctuated_composite(global_sine_profile(f0, g0, xi, eta), grid)
        elif scenario == ScenarioKind.HA_HB_COMPARISON:
            report = run_ha_hb_comparison(two_level_profile(f0, g0, xi, eta), grid)
        elif scenario == ScenarioKind.CASE_III:
            report = run_case_iii(*uncorrelated_profiles(f0, g0, xi, eta), grid=grid)
        else:
            raise ConfigError(f"scenario {scenario!r} cannot be swept")
    except Exception as exc:
        logger.warning("sweep point failed", extra={"scenario": scenario.value, **inputs, "error": str(exc)})
        return ScenarioReport(scenario=scenario.value, inputs=inputs, status=ReportStatus.ERROR, message=str(exc))
    report.scenario = scenario.value
    report.inputs.update(inputs)
    return report


def _run_packed(point: SweepPoint) -> ScenarioReport:
    return run_point(*point)


def sweep(config: SweepConfig, grid: Optional[GridSpec] = None, workers: Optional[int] = None) -> List[ScenarioReport]:
    """
    One report per point of f0 x g0 x xi x eta, in that nesting order.
    Points are independent; with workers > 1 they run in a process pool and
    come back in grid order.
    """
    if config.points == 0:
        raise ConfigError("sweep grid is empty")
    if grid is None and config.steps is not None:
        grid = GridSpec(config.steps)
    workers = workers or config.workers or settings.SWEEP_WORKERS

    points: List[SweepPoint] = [
        (config.scenario, f0, g0, xi, eta, grid)
        for f0, g0, xi, eta in itertools.product(config.f0, config.g0, config.xi, config.eta)
    ]
    logger.info("sweep started", extra={"scenario": config.scenario.value, "points": len(points), "workers": workers})

    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_packed, points))
    else:
        reports = [_run_packed(p) for p in points]

    failed = sum(1 for r in reports if not r.ok)
    logger.info("sweep finished", extra={"points": len(reports), "failed": failed})
    return reports
