"""
Configuration management for seglat based on Pydantic Settings.

Supported sources:
- Environment variables (SEGLAT_*, nested with "__")
- .env files
- YAML configuration files
- CLI arguments override
"""

import logging
import math
import os
import sys
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

import structlog
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

from seglat.core.exceptions import ConfigurationError

logger = structlog.get_logger(__name__)


def _default_threads() -> int:
    return max(1, os.cpu_count() or 1)


class SimulationConfig(BaseSettings):
    """Replicate execution and finite-size safeguards."""

    threads: int = Field(default_factory=_default_threads, ge=1, description="Worker processes for replicates")
    chunk_size: int = Field(default=8, ge=1, description="Replicates handed to a worker at once")
    bias_tolerance: float = Field(default=1e-12, gt=0.0, lt=1.0, description="Bound on (1-p)^(L-2) for local events")
    default_master_seed: int = Field(default=20190819, ge=0, description="Master seed when none is given")

    model_config = {"env_prefix": "SEGLAT_"}


class ThresholdConfig(BaseSettings):
    """Literature constants used only for endpoint checks and region labels."""

    bond: Dict[int, float] = Field(
        default={2: 0.5, 3: 0.2488126},
        description="Bond percolation thresholds of Z^d (d=2 exact)",
    )
    site: Dict[int, float] = Field(
        default={2: 0.592746, 3: 0.3116077},
        description="Site percolation thresholds of Z^d (numerical)",
    )
    hexagonal_bond: float = Field(
        default=1.0 - 2.0 * math.sin(math.pi / 18.0),
        description="Bond threshold of the hexagonal lattice",
    )
    use_hexagonal_bound: bool = Field(default=True, description="Label lambda > hexagonal_bond as percolating")
    log_constant: Optional[float] = Field(
        default=None, gt=0.0, description="Constant c of the c*log(1/q) criterion (None disables it)"
    )

    model_config = {"env_prefix": "SEGLAT_THRESHOLD_"}

    def bond_threshold(self, d: int) -> float:
        """Bond threshold for dimension d."""
        try:
            return self.bond[d]
        except KeyError as e:
            raise ConfigurationError(
                f"No bond threshold configured for d={d}", config_key="thresholds.bond"
            ) from e

    def site_threshold(self, d: int) -> float:
        """Site threshold for dimension d."""
        try:
            return self.site[d]
        except KeyError as e:
            raise ConfigurationError(
                f"No site threshold configured for d={d}", config_key="thresholds.site"
            ) from e


class LoggingConfig(BaseSettings):
    """Structured logging configuration."""

    log_level: str = Field(default="WARNING", description="Logging level")
    log_format: Literal["console", "json"] = Field(default="console", description="Renderer")
    include_timestamps: bool = Field(default=False, description="Add ISO timestamps")

    @field_validator("log_level")
    @classmethod
    def normalise_level(cls, v: str) -> str:
        """Upper-case and check the level name."""
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level

    model_config = {"env_prefix": "SEGLAT_LOG_"}

    def setup_logging(self) -> None:
        """Configure structlog; log records go to stderr, results own stdout."""
        processors: list[Any] = [
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
        ]

        if self.include_timestamps:
            processors.append(structlog.processors.TimeStamper(fmt="ISO"))

        if self.log_format == "json":
            processors.append(structlog.processors.JSONRenderer())
        else:
            processors.append(structlog.dev.ConsoleRenderer(colors=False))

        structlog.configure(
            processors=processors,
            wrapper_class=structlog.make_filtering_bound_logger(
                logging.getLevelName(self.log_level)
            ),
            logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
            cache_logger_on_first_use=False,
        )


class SeglatConfig(BaseSettings):
    """Main seglat configuration."""

    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    thresholds: ThresholdConfig = Field(default_factory=ThresholdConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @classmethod
    def from_yaml(cls, yaml_path: Union[str, Path]) -> "SeglatConfig":
        """Load configuration from a YAML file."""
        import yaml

        yaml_path = Path(yaml_path)
        if not yaml_path.exists():
            raise ConfigurationError(
                f"Configuration file not found: {yaml_path}", config_file=str(yaml_path)
            )

        with open(yaml_path, "r") as f:
            config_data = yaml.safe_load(f) or {}

        return cls(**config_data)

    @classmethod
    def from_env(cls, env_file: Optional[Union[str, Path]] = None) -> "SeglatConfig":
        """Load configuration from environment variables and an optional .env file."""
        env_path = Path(env_file) if env_file else Path(".env")
        if env_path.exists():
            from dotenv import load_dotenv

            load_dotenv(env_path)

        return cls()

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to a dictionary."""
        return self.model_dump()

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
        "env_nested_delimiter": "__",
        "extra": "ignore",
    }


_config: Optional[SeglatConfig] = None


def get_config() -> SeglatConfig:
    """Get the global configuration instance."""
    global _config

    if _config is None:
        _config = SeglatConfig.from_env()
        logger.debug("Configuration loaded", threads=_config.simulation.threads)

    return _config


def set_config(config: SeglatConfig) -> None:
    """Install an explicit configuration (CLI overrides, tests)."""
    global _config
    _config = config


def reset_config() -> None:
    """Reset global configuration (for testing)."""
    global _config
    _config = None
