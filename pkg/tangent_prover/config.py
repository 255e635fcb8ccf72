"""Configuration management using pydantic-settings."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Prover settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging and Observability
    log_level: str = Field(
        default="INFO", description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )
    enable_monitoring: bool = Field(
        default=False,
        description="Enable Prometheus metrics collection (default: False)",
    )
    metrics_textfile: str = Field(
        default="",
        description="Write the metrics registry to this file on exit (textfile collector format)",
    )

    # Numeric evidence
    numeric_tol: float = Field(
        default=1e-9, gt=0, description="Tolerance for the numeric-evidence verdict"
    )
    numeric_grid_points: int = Field(
        default=10_000, ge=100, description="Uniform grid size for numeric evidence"
    )
    refinement_factor: int = Field(
        default=10, ge=2, description="Grid refinement factor around near-zero dips"
    )
    dip_threshold: float = Field(
        default=1e-3, ge=0, description="Gap value below which a local minimum is refined"
    )
    numeric_infinite_cap: float = Field(
        default=64.0,
        gt=0,
        description="Truncation length used when an evidence interval is unbounded",
    )

    # Oracle sampling
    default_seed: int = Field(default=42, description="Seed echoed into certificates")
    oracle_samples: int = Field(
        default=10_000, ge=10, description="Random constrained tuples per oracle run"
    )
    extreme_samples: int = Field(
        default=100_000, ge=100, description="Samples used when estimating a constrained extremum"
    )

    # Method parameters
    sum_power_alphas: list[int] = Field(
        default=[2, 3],
        description="Exponents tried for power curves under a sum constraint",
    )
    split_denominators: list[int] = Field(
        default=[10, 100],
        description="Denominators of the decimal grids used to round split points",
    )
    split_isolation_width: float = Field(
        default=1e-6, gt=0, description="Isolation width for sign-changing roots when splitting"
    )
    min_bracket_width: float = Field(
        default=1e-12, gt=0, description="Bracket width for irrational critical points"
    )
    touchpoint_tol: float = Field(
        default=1e-12, gt=0, description="Residual tolerance of the touch-point solver"
    )
    touchpoint_max_denominator: int = Field(
        default=10_000, ge=1, description="Largest denominator tried in rational reconstruction"
    )
    homogeneity_tol: float = Field(
        default=1e-8, gt=0, description="Relative residual allowed by numeric homogeneity detection"
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
