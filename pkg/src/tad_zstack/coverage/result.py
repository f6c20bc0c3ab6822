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
Coverage: Result
================

Selected frames with the audit trail of every candidate. The JSON layout is

.. code-block:: json

    {
      "selected": [3, 12],
      "audit": [{"index": 3, "reason": "kept"}, {"index": 7, "reason": "dirt"}],
      "sector_owner": [[3, 3, 12, 12], ...]
    }

with the reasons `kept`, `dup_of:k`, `blurred`, `dirt` and `dark`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..exception import ZStackError

__all__ = ["AuditRecord", "CoverageResult", "AUDIT_REASONS"]


AUDIT_REASONS = ("kept", "dup_of", "blurred", "dirt", "dark")
"""Reason prefixes of audit records."""


@dataclass(frozen=True)
class AuditRecord:
    """
    Fate of a single frame.
    """

    index: int
    """Frame index."""

    reason: str
    """One of `kept`, `dup_of:k`, `blurred`, `dirt`, `dark`."""

    def __post_init__(self) -> None:
        if self.reason.split(":", 1)[0] not in AUDIT_REASONS:
            raise ValueError(f"Unknown audit reason '{self.reason}'.")

    @property
    def duplicate_of(self) -> int:
        """Index of the kept twin, `-1` if the frame is no duplicate."""
        if self.reason.startswith("dup_of:"):
            return int(self.reason.split(":", 1)[1])
        return -1

    def to_dict(self) -> Dict[str, Any]:
        return {"index": self.index, "reason": self.reason}


@dataclass(frozen=True)
class CoverageResult:
    """
    Result of :func:`~tad_zstack.coverage.coverage.full_focus_coverage`.
    """

    selected: List[int]
    """Selected frame indices, strictly increasing."""

    audit: List[AuditRecord] = field(default_factory=list)
    """Records of all candidates and dark frames, sorted by index."""

    sector_owner: List[List[int]] = field(default_factory=list)
    """Winning frame per sector, `-1` for sectors dark in every frame."""

    def __post_init__(self) -> None:
        if any(a >= b for a, b in zip(self.selected, self.selected[1:])):
            raise ValueError("Selected frames must be strictly increasing.")

    def reasons(self) -> Dict[int, str]:
        """Audit reasons by frame index."""
        return {rec.index: rec.reason for rec in self.audit}

    def dropped(self, reason: str) -> List[int]:
        """Frames dropped for the given reason prefix, e.g. `"dup_of"`."""
        return [
            rec.index
            for rec in self.audit
            if rec.reason.split(":", 1)[0] == reason
        ]

    def summary(self) -> Dict[str, Any]:
        """Counts per audit reason, as stored in run reports."""
        counts = {r: len(self.dropped(r)) for r in AUDIT_REASONS}
        return {"selected": list(self.selected), "counts": counts}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "selected": list(self.selected),
            "audit": [rec.to_dict() for rec in self.audit],
            "sector_owner": [list(row) for row in self.sector_owner],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> CoverageResult:
        try:
            return cls(
                selected=[int(i) for i in data["selected"]],
                audit=[
                    AuditRecord(int(rec["index"]), str(rec["reason"]))
                    for rec in data.get("audit", [])
                ],
                sector_owner=[
                    [int(i) for i in row] for row in data.get("sector_owner", [])
                ],
            )
        except (KeyError, TypeError) as e:
            raise ZStackError(f"Malformed coverage result: {e}") from e

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> CoverageResult:
        return cls.from_dict(json.loads(text))
