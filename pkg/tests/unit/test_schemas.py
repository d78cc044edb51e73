"""Unit tests for config files, report models and the JSON envelopes."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from pulseloop.core.errors import NonCyclicEvolutionError, PulseParseError
from pulseloop.models.enums import ExpectationSource, ProfileKind, ReportStatus, ScenarioKind
from pulseloop.models.trajectory import GridSpec
from pulseloop.schemas.config import ProfileConfig, RunConfig, SweepConfig
from pulseloop.schemas.reports import SWEEP_COLUMNS, ExpectationCheck, GateReportOut, ScenarioReport
from pulseloop.schemas.responses import command_response, error_response, report_list_response
from pulseloop.services.phase_service import gate_from_simulation


def _check(name="c", actual=0.0, expected=0.0, tolerance=1e-6, blocking=True) -> ExpectationCheck:
    return ExpectationCheck(
        name=name,
        expected=expected,
        actual=actual,
        tolerance=tolerance,
        source=ExpectationSource.DERIVED,
        blocking=blocking,
    )


class TestProfileConfig:
    def test_sine_defaults(self):
        config = ProfileConfig(kind="global_sine", f0=0.1)
        assert config.kind == ProfileKind.GLOBAL_SINE
        assert (config.g0, config.xi, config.eta) == (0.0, 1, 1)

    def test_tabulated_requires_samples(self):
        with pytest.raises(ValidationError):
            ProfileConfig(kind="tabulated")

    def test_samples_only_for_tabulated(self):
        with pytest.raises(ValidationError):
            ProfileConfig(kind="piecewise_sine", samples=[[0.0, 0.0, 0.0]])

    def test_cycles_for_global_sine(self):
        assert ProfileConfig(kind="global_sine").cycles == 4
        assert ProfileConfig(kind="global_sine", cycles=1).cycles == 1
        with pytest.raises(ValidationError):
            ProfileConfig(kind="piecewise_sine", cycles=1)
        with pytest.raises(ValidationError):
            ProfileConfig(kind="global_sine", cycles=0)

    @pytest.mark.parametrize("payload", [{"kind": "zero", "amplitude": 1.0}, {"kind": "global_sine", "xi": 0}])
    def test_rejects_bad_payload(self, payload):
        with pytest.raises(ValidationError):
            ProfileConfig.model_validate(payload)


class TestRunAndSweepConfig:
    def test_basis_from_text(self):
        assert RunConfig(basis="1, 0, 0").basis == (1.0, 0.0, 0.0)

    def test_basis_needs_three_numbers(self):
        with pytest.raises(ValidationError):
            RunConfig(basis="1,0")

    def test_steps_floor(self):
        with pytest.raises(ValidationError):
            RunConfig(steps=100)

    def test_sweep_points(self):
        config = SweepConfig(f0=[0.0, 0.1], g0=[0.1], xi=[5, 7], eta=[5])
        assert config.scenario == ScenarioKind.FLUCTUATED_PIECEWISE
        assert config.points == 4
        assert SweepConfig(f0=[]).points == 0


class TestReports:
    def test_check_verdicts(self):
        assert _check(actual=5e-7).passed
        assert not _check(actual=2e-6).passed
        assert not _check(actual=math.nan).passed
        assert _check(actual=3.0, tolerance=None).passed
        assert _check(actual=-0.25, expected=None).deviation == 0.25

    def test_finalize_without_thresholds_reports(self):
        report = ScenarioReport(scenario="exploratory", checks=[_check(actual=1.0, tolerance=None, blocking=False)])
        assert report.finalize().status == ReportStatus.REPORTED
        assert report.ok

    def test_finalize_ignores_non_blocking_failures(self):
        report = ScenarioReport(scenario="s", checks=[_check(), _check("soft", actual=1.0, blocking=False)]).finalize()
        assert report.status == ReportStatus.PASSED

    def test_finalize_names_failed_checks(self):
        report = ScenarioReport(scenario="s", checks=[_check("a"), _check("b", actual=1.0)]).finalize()
        assert report.status == ReportStatus.FAILED
        assert report.message == "failed: b"
        assert not report.ok

    def test_finalize_keeps_error(self):
        report = ScenarioReport(scenario="s", status=ReportStatus.ERROR, message="boom").finalize()
        assert report.status == ReportStatus.ERROR
        assert not report.ok

    def test_row_layout(self):
        report = ScenarioReport(
            scenario="fluctuated_piecewise",
            inputs={"f0": 0.1, "g0": 0.2, "xi": 5, "eta": 3},
            outputs={"fidelity": 1.0, "gamma_total": -1.5, "final_bloch": [0.0, 1.0, 0.0]},
        ).finalize()
        row = report.to_row()
        assert list(row) == SWEEP_COLUMNS
        assert (row["f0"], row["eta"], row["status"]) == (0.1, 3, "reported")
        assert (row["final_nx"], row["final_ny"], row["final_nz"]) == (0.0, 1.0, 0.0)
        assert row["gamma_geometric"] == ""

    def test_json_dict_carries_verdicts(self):
        data = ScenarioReport(scenario="s", checks=[_check(actual=2e-6)]).finalize().to_json_dict()
        assert data["status"] == "failed"
        assert data["checks"][0]["passed"] is False
        assert data["checks"][0]["deviation"] == pytest.approx(2e-6)
        assert data["checks"][0]["source"] == "derived"

    def test_gate_report_json(self, composite):
        out = GateReportOut.from_domain(gate_from_simulation(composite, grid=GridSpec(2048)))
        assert out.basis_plus == [0.0, 1.0, 0.0]
        assert out.plus.gamma_total == pytest.approx(-0.5 * math.pi, abs=1e-8)
        np.testing.assert_allclose(out.unitary_re, [[0.0, -1.0], [1.0, 0.0]], atol=1e-8)
        assert out.solid_angle_plus is not None


class TestEnvelopes:
    def test_command_response(self):
        body = command_response("phases", {"a": 1}, "Phases decomposed").model_dump()
        assert body == {"success": True, "command": "phases", "data": {"a": 1}, "message": "Phases decomposed"}

    def test_report_list_counts(self):
        reports = [
            ScenarioReport(scenario="a", checks=[_check()]).finalize(),
            ScenarioReport(scenario="b", checks=[_check(actual=1.0)]).finalize(),
            ScenarioReport(scenario="c", status=ReportStatus.ERROR, message="boom"),
            ScenarioReport(scenario="d").finalize(),
        ]
        body = report_list_response("sweep", reports, "4 points").model_dump(mode="json")
        assert body["success"] is False
        assert body["summary"] == {"total": 4, "passed": 2, "failed": 1, "errors": 1}
        assert [row["scenario"] for row in body["data"]] == ["a", "b", "c", "d"]
        assert body["data"][1]["checks"][0]["passed"] is False

    def test_report_list_all_ok(self):
        reports = [ScenarioReport(scenario="a", checks=[_check()]).finalize()]
        body = report_list_response("papercheck", reports, "All checks passed").model_dump()
        assert body["success"] is True
        assert body["summary"]["passed"] == 1

    def test_package_error(self):
        body = error_response(PulseParseError("unknown axis", 1, "90q")).model_dump()
        assert body["success"] is False
        assert body["error"]["code"] == "PARSE_ERROR"
        assert body["error"]["exit_code"] == 2
        assert "90q" in body["error"]["message"]

    def test_numeric_error_code(self):
        body = error_response(NonCyclicEvolutionError("evolution is not cyclic", 0.7, 0.1)).model_dump()
        assert body["error"]["code"] == "NON_CYCLIC"
        assert body["error"]["exit_code"] == 1

    def test_unexpected_error(self):
        body = error_response(RuntimeError("oops")).model_dump()
        assert body["error"] == {"code": "INTERNAL_ERROR", "message": "oops", "exit_code": 1}
