"""
RunConfig: the declarative record of one command invocation.

Options are stored as the command received them, so loading the YAML file
back and running it reproduces the same artifacts.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field

from seglat.core.exceptions import ConfigurationError


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


class RunConfig(BaseModel):
    """Command name plus every option value it ran with."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str = Field(..., description="CLI command name")
    options: Dict[str, Any] = Field(default_factory=dict, description="Option values by parameter name")

    @classmethod
    def from_options(cls, command: str, options: Dict[str, Any]) -> "RunConfig":
        return cls(command=command, options={name: _plain(value) for name, value in options.items()})

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "RunConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"RunConfig not found: {path}", config_file=str(path))
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
            return cls.model_validate(data)
        except (yaml.YAMLError, ValueError) as e:
            raise ConfigurationError(f"Invalid RunConfig: {e}", config_file=str(path)) from e

    def to_yaml(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(yaml.safe_dump(self.model_dump(), sort_keys=True), encoding="utf-8")
