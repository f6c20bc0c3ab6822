# This file is part of tad-zstack.
# SPDX-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Pipeline: Configuration
=======================

JSON configuration of a pipeline run:

.. code-block:: json

    {
      "stages": [
        {"name": "fast_search", "enabled": true, "parameters": {"coarse_stride": 8}},
        {"name": "coverage", "parameters": {"method": "parts"}},
        {"name": "stack", "parameters": {"method": "wavelet"}}
      ],
      "io": {"input_dir": "frames", "output_dir": "out", "report_path": "run.json"}
    }

Stages must appear in the order `fast_search`, `coverage`, `stack`; each of
them may be omitted or disabled.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from ..exception import ConfigError

__all__ = ["STAGE_ORDER", "StageConfig", "IOConfig", "PipelineConfig"]


STAGE_ORDER = ("fast_search", "coverage", "stack")
"""Admissible stages in execution order."""


def _check_keys(cls: type, data: Dict[str, Any], what: str) -> None:
    unknown = set(data) - set(cls.__dataclass_fields__)  # type: ignore[attr-defined]
    if unknown:
        raise ConfigError(f"Unknown {what} fields: {', '.join(sorted(unknown))}.")


@dataclass(frozen=True)
class StageConfig:
    """
    Descriptor of one stage.
    """

    name: str
    """Stage name, one of :data:`STAGE_ORDER`."""

    enabled: bool = True
    """Disabled stages pass their frames through unchanged."""

    parameters: Dict[str, Any] = field(default_factory=dict)
    """Stage-specific parameters."""

    def __post_init__(self) -> None:
        if self.name not in STAGE_ORDER:
            raise ConfigError(
                f"Unknown stage '{self.name}', choose from: "
                f"{', '.join(STAGE_ORDER)}."
            )
        if not isinstance(self.parameters, dict):
            raise ConfigError(f"Parameters of stage '{self.name}' must be a map.")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "enabled": self.enabled,
            "parameters": dict(self.parameters),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> StageConfig:
        _check_keys(cls, data, "stage")
        if "name" not in data:
            raise ConfigError("Stage descriptor without name.")
        params = data.get("parameters", {})
        if not isinstance(params, dict):
            name = data["name"]
            raise ConfigError(f"Parameters of stage '{name}' must be a map.")
        return cls(
            name=str(data["name"]),
            enabled=bool(data.get("enabled", True)),
            parameters=dict(params),
        )


@dataclass(frozen=True)
class IOConfig:
    """
    Input and output locations.
    """

    input_dir: str
    """Directory of the input frames."""

    output_dir: Optional[str] = None
    """Directory for the fused image, nothing is written if unset."""

    report_path: Optional[str] = None
    """File for the JSON run report, nothing is written if unset."""

    stride: int = 1
    """Z-step of the input frames in motor steps."""

    def __post_init__(self) -> None:
        if self.stride < 1:
            raise ConfigError(f"Stride must be positive, got {self.stride}.")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input_dir": self.input_dir,
            "output_dir": self.output_dir,
            "report_path": self.report_path,
            "stride": self.stride,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> IOConfig:
        _check_keys(cls, data, "io")
        if "input_dir" not in data:
            raise ConfigError("The io section needs an 'input_dir'.")
        return cls(**data)


@dataclass(frozen=True)
class PipelineConfig:
    """
    Ordered stages and input/output locations.

    Raises
    ------
    ConfigError
        If stages are repeated or out of order.
    """

    stages: Tuple[StageConfig, ...]
    """Stage descriptors in execution order."""

    io: IOConfig
    """Input and output locations."""

    def __post_init__(self) -> None:
        object.__setattr__(self, "stages", tuple(self.stages))

        ranks = [STAGE_ORDER.index(s.name) for s in self.stages]
        for prev, curr, stage in zip(ranks, ranks[1:], self.stages[1:]):
            if curr <= prev:
                raise ConfigError(
                    f"Stage '{stage.name}' out of order, stages must follow "
                    f"{' -> '.join(STAGE_ORDER)} without repetition."
                )

    def stage(self, name: str) -> Optional[StageConfig]:
        """Descriptor of a stage, `None` if absent."""
        for s in self.stages:
            if s.name == name:
                return s
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "stages": [s.to_dict() for s in self.stages],
            "io": self.io.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> PipelineConfig:
        _check_keys(cls, data, "pipeline")
        if "io" not in data:
            raise ConfigError("Pipeline configuration without 'io' section.")
        return cls(
            stages=tuple(StageConfig.from_dict(s) for s in data.get("stages", [])),
            io=IOConfig.from_dict(data["io"]),
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> PipelineConfig:
        """
        Read a JSON configuration. Relative directories are resolved against
        the location of the file.
        """
        file = Path(path)
        try:
            data = json.loads(file.read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in '{file}': {e}") from e

        cfg = cls.from_dict(data)
        base = file.parent

        def resolve(p: Optional[str]) -> Optional[str]:
            if p is None or Path(p).is_absolute():
                return p
            return str(base / p)

        io = IOConfig(
            input_dir=str(resolve(cfg.io.input_dir)),
            output_dir=resolve(cfg.io.output_dir),
            report_path=resolve(cfg.io.report_path),
            stride=cfg.io.stride,
        )
        return cls(stages=cfg.stages, io=io)
