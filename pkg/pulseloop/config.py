"""Application Configuration"""

from pydantic import ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from pulseloop.core.errors import ConfigError


class Settings(BaseSettings):
    """Simulation settings loaded from environment variables (prefix PULSELOOP_)"""

    # Application
    APP_NAME: str = "pulseloop"
    APP_VERSION: str = "0.3.0"
    ENVIRONMENT: str = "development"

    # Integration grid
    STEPS: int = 16384
    # strong-noise runs (H_A / H_B comparison, case iii at unit amplitude)
    STRONG_NOISE_STEPS: int = 65536

    # Tolerances
    CYCLIC_TOL: float = 1e-6
    UNIT_TOL: float = 1e-12
    INPUT_UNIT_TOL: float = 1e-9
    BOUNDARY_TOL: float = 1e-9
    SYMMETRY_TOL: float = 1e-9
    SYMMETRY_GRID: int = 1024
    ORTHOGONALITY_TOL: float = 1e-6

    # Tabulated profiles: central difference stencil width
    FD_STEP: float = 1e-6

    # Sweeps
    SWEEP_WORKERS: int = 1

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "json"

    model_config = SettingsConfigDict(
        env_prefix="PULSELOOP_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    @field_validator("STEPS", "STRONG_NOISE_STEPS")
    @classmethod
    def check_steps(cls, v: int) -> int:
        """Grids coarser than 256 steps per unit time are rejected"""
        if v < 256:
            raise ValueError("steps per unit time must be >= 256")
        return v

    @field_validator("LOG_FORMAT")
    @classmethod
    def check_log_format(cls, v: str) -> str:
        if v not in ("json", "text"):
            raise ValueError("LOG_FORMAT must be 'json' or 'text'")
        return v


def load_settings() -> Settings:
    """Settings from the environment; invalid values become a ConfigError"""
    try:
        return Settings()
    except ValidationError as e:
        fields = ", ".join(".".join(str(p) for p in err["loc"]) for err in e.errors())
        raise ConfigError(f"invalid PULSELOOP_ environment settings: {fields}") from e


# Global settings instance
settings = load_settings()
