"""JSON envelopes printed by the --json mode of every command"""

from typing import Any, Dict, Generic, List, Sequence, TypeVar

from pydantic import BaseModel, Field

from pulseloop.core.errors import PulseLoopError
from pulseloop.models.enums import ReportStatus
from pulseloop.schemas.reports import ScenarioReport

T = TypeVar('T')


class CommandResponse(BaseModel, Generic[T]):
    """
    Result of a single run.

    Example:
        {
            "success": true,
            "command": "phases",
            "data": {"plus": {...}, "minus": {...}, ...},
            "message": "Phases decomposed"
        }
    """
    success: bool = True
    command: str
    data: T
    message: str


class ReportSummary(BaseModel):
    """Verdict counts over a list of scenario reports"""
    total: int = Field(..., ge=0)
    passed: int = Field(..., ge=0, description="passed or reported without blocking checks")
    failed: int = Field(..., ge=0, description="a blocking check missed its tolerance")
    errors: int = Field(..., ge=0, description="the run itself raised")

    @classmethod
    def of(cls, reports: Sequence[ScenarioReport]) -> "ReportSummary":
        errors = sum(1 for r in reports if r.status == ReportStatus.ERROR)
        passed = sum(1 for r in reports if r.ok)
        return cls(total=len(reports), passed=passed, failed=len(reports) - passed - errors, errors=errors)


class ReportListResponse(BaseModel):
    """
    Reports of a sweep or a check run; success only when every report is ok.

    Example:
        {
            "success": false,
            "command": "sweep",
            "data": [{"scenario": "fluctuated_piecewise", "status": "passed", ...}, ...],
            "summary": {"total": 9, "passed": 8, "failed": 0, "errors": 1},
            "message": "9 points"
        }
    """
    success: bool
    command: str
    data: List[Dict[str, Any]]
    summary: ReportSummary
    message: str


class ErrorDetail(BaseModel):
    code: str
    message: str
    exit_code: int


class ErrorResponse(BaseModel):
    """
    Failed run.

    Example:
        {
            "success": false,
            "error": {
                "code": "PARSE_ERROR",
                "message": "expected <angle><axis> or <angle>(<phase>) at token 1 '90q'",
                "exit_code": 2
            }
        }
    """
    success: bool = False
    error: ErrorDetail


def command_response(command: str, data: Any, message: str) -> CommandResponse[Any]:
    return CommandResponse[Any](command=command, data=data, message=message)


def report_list_response(command: str, reports: Sequence[ScenarioReport], message: str) -> ReportListResponse:
    summary = ReportSummary.of(reports)
    return ReportListResponse(
        success=summary.passed == summary.total,
        command=command,
        data=[r.to_json_dict() for r in reports],
        summary=summary,
        message=message,
    )


def error_response(exc: Exception) -> ErrorResponse:
    if isinstance(exc, PulseLoopError):
        return ErrorResponse(error=ErrorDetail(**exc.to_detail(), exit_code=exc.exit_code))
    return ErrorResponse(error=ErrorDetail(code="INTERNAL_ERROR", message=str(exc), exit_code=1))
