"""Error types shared by every service.

Each error carries a machine-readable ``code`` (used in the JSON error
envelope) and the process ``exit_code`` the CLI maps it to: 2 for
usage/config/parse problems, 1 for numeric failures.
"""

from typing import Any, Dict, Optional


class PulseLoopError(Exception):
    """Base class for all package errors"""

    code = "PULSELOOP_ERROR"
    exit_code = 1

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def to_detail(self) -> Dict[str, str]:
        return {"code": self.code, "message": self.message}


class DomainError(PulseLoopError, ValueError):
    """Numeric input outside the operation's domain (non-unit vector, t outside [0, 1], ...)"""

    code = "DOMAIN_ERROR"


class PulseParseError(PulseLoopError, ValueError):
    """Pulse-sequence text that does not match the grammar"""

    code = "PARSE_ERROR"
    exit_code = 2

    def __init__(self, message: str, position: int, token: Optional[str] = None) -> None:
        where = f"token {position}" + (f" {token!r}" if token is not None else "")
        super().__init__(f"{message} at {where}", position=position, token=token)
        self.position = position
        self.token = token


class ConfigError(PulseLoopError, ValueError):
    """Invalid run, profile or sweep configuration"""

    code = "CONFIG_ERROR"
    exit_code = 2


class BoundaryConditionError(ConfigError):
    """Fluctuation profile that does not vanish at both ends of the sequence"""

    code = "BOUNDARY_CONDITION"


class IntegrationError(PulseLoopError):
    """Non-finite Hamiltonian sample or state during propagation"""

    code = "INTEGRATION_ERROR"

    def __init__(self, message: str, time: float) -> None:
        super().__init__(f"{message} at t={time:.12g}", time=time)
        self.time = time


class GridMismatchError(PulseLoopError):
    """Trajectory grid does not resolve the Hamiltonian's breakpoints"""

    code = "GRID_MISMATCH"


class NonCyclicEvolutionError(PulseLoopError):
    """Final state is not the initial state up to a global phase"""

    code = "NON_CYCLIC"

    def __init__(self, message: str, fidelity: float, total_phase: float) -> None:
        super().__init__(
            f"{message} (fidelity={fidelity:.12g}, total_phase={total_phase:.12g})",
            fidelity=fidelity,
            total_phase=total_phase,
        )
        self.fidelity = fidelity
        self.total_phase = total_phase


class SolidAngleError(PulseLoopError, ValueError):
    """Bloch path that is open or too sparse for a solid-angle estimate"""

    code = "SOLID_ANGLE_ERROR"


class DriveAlignmentError(PulseLoopError):
    """Basis vector not orthogonal to the drive axis; the run would carry a dynamical phase"""

    code = "DRIVE_ALIGNMENT"
