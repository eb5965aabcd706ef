"""
Core module: configuration, exceptions and logging setup.
"""

from seglat.core.config import (
    LoggingConfig,
    SeglatConfig,
    SimulationConfig,
    ThresholdConfig,
    get_config,
    reset_config,
    set_config,
)
from seglat.core.exceptions import (
    BiasBoundError,
    ConfigurationError,
    EstimationError,
    GeometryError,
    ModelError,
    ParameterError,
    SeglatError,
    SerializationError,
)

__all__ = [
    "SeglatConfig",
    "SimulationConfig",
    "ThresholdConfig",
    "LoggingConfig",
    "get_config",
    "set_config",
    "reset_config",
    "SeglatError",
    "GeometryError",
    "ParameterError",
    "BiasBoundError",
    "ModelError",
    "EstimationError",
    "SerializationError",
    "ConfigurationError",
]
