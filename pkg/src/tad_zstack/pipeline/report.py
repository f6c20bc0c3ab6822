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
Pipeline: Run report
====================

Single-file JSON record of a pipeline run: one entry per stage with frame
counts and wall time, and the results of the individual stages. Frame indices
always refer to the input stack.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..exception import ZStackError

__all__ = ["StageRecord", "RunReport"]


@dataclass
class StageRecord:
    """
    Bookkeeping of one stage.
    """

    name: str
    enabled: bool
    input_frames: int
    output_frames: int
    wall_ms: float = 0.0

    def __post_init__(self) -> None:
        if self.wall_ms < 0.0:
            raise ValueError(f"Negative stage time {self.wall_ms} ms.")


@dataclass
class RunReport:
    """
    Report of :func:`~tad_zstack.pipeline.run.run_pipeline`.
    """

    input_frames: int = 0
    """Number of frames of the input stack."""

    stages: List[StageRecord] = field(default_factory=list)
    """Records of the executed stages, in order."""

    output_frames: List[int] = field(default_factory=list)
    """Input indices of the frames leaving the last stage."""

    segment: Optional[Dict[str, Any]] = None
    """Focused segment of the fast search."""

    coverage: Optional[Dict[str, Any]] = None
    """Coverage result in input indices, with counts per audit reason."""

    stack: Optional[Dict[str, Any]] = None
    """Stacking method and written files."""

    metrics: Optional[Dict[str, Any]] = None
    """Free-form metrics block of benchmark runs."""

    error: Optional[Dict[str, str]] = None
    """Stage name and cause of an aborted run."""

    def record(self, rec: StageRecord) -> None:
        self.stages.append(rec)

    def without_timings(self) -> Dict[str, Any]:
        """Dictionary representation with all wall times zeroed."""
        data = self.to_dict()
        for rec in data["stages"]:
            rec["wall_ms"] = 0.0
        return data

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> RunReport:
        try:
            stages = [StageRecord(**rec) for rec in data.get("stages", [])]
            return cls(
                input_frames=int(data.get("input_frames", 0)),
                stages=stages,
                output_frames=[int(i) for i in data.get("output_frames", [])],
                segment=data.get("segment"),
                coverage=data.get("coverage"),
                stack=data.get("stack"),
                metrics=data.get("metrics"),
                error=data.get("error"),
            )
        except TypeError as e:
            raise ZStackError(f"Malformed run report: {e}") from e

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))

    def write(self, path: Union[str, Path]) -> Path:
        """Write the report as indented JSON, creating parent directories."""
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(self.to_json(indent=2))
        return out
