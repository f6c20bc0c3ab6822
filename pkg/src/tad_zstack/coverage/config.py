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
Coverage: Configuration
=======================

Parameters of the coverage extraction. Defaults are taken from
:mod:`tad_zstack.defaults`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Union

from .. import defaults
from ..exception import ConfigError
from ..measure.operators import FMOperator
from ..measure.sector import SectorGrid

__all__ = ["SelectionMethod", "CoverageConfig"]


class SelectionMethod(str, Enum):
    """
    Frame selection strategies.

    - PARTS: every sector contributes its sharpest frame
    - BEST3: the (at most) three frames winning most sectors
    """

    PARTS = "parts"
    BEST3 = "best3"

    @classmethod
    def parse(cls, value: Union[str, SelectionMethod]) -> SelectionMethod:
        """Look up a method by (case-insensitive) name."""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError as e:
            raise ConfigError(
                f"Unknown selection method '{value}', choose from: parts, best3."
            ) from e


@dataclass(frozen=True)
class CoverageConfig:
    """
    Configuration of :func:`~tad_zstack.coverage.coverage.full_focus_coverage`.
    """

    grid: SectorGrid = field(default_factory=SectorGrid)
    """Sector grid (4x4)."""

    operator: FMOperator = FMOperator.TENG
    """Focus measure for sectors and whole frames."""

    dark_threshold: float = defaults.DARK_THRESHOLD
    """Intensity threshold of the dark mask (0.04)."""

    dup_mad_threshold: float = defaults.DUP_MAD_THRESHOLD
    """Duplicate threshold on the mean absolute difference (0.02)."""

    blur_ratio: float = defaults.BLUR_RATIO
    """Blurred frames have less than this fraction of the maximum FM (0.2)."""

    dirt_prom_ratio: float = defaults.DIRT_PROM_RATIO
    """Maximum relative prominence of dirt peaks (0.3)."""

    dirt_dist_ratio: float = defaults.DIRT_DIST_RATIO
    """Minimum distance of dirt peaks in main peak widths (1.5)."""

    dirt_rel_height: float = defaults.DIRT_REL_HEIGHT
    """Base level of the peak spans in the dirt rule (0.5)."""

    method: SelectionMethod = SelectionMethod.PARTS
    """Selection method."""

    def __post_init__(self) -> None:
        object.__setattr__(self, "operator", FMOperator.parse(self.operator))
        object.__setattr__(self, "method", SelectionMethod.parse(self.method))

        if not 0.0 < self.dark_threshold < 1.0:
            raise ConfigError(
                f"Dark threshold must lie in (0, 1), got {self.dark_threshold}."
            )
        for name in ("dup_mad_threshold", "blur_ratio", "dirt_prom_ratio"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ConfigError(f"'{name}' must lie in (0, 1], got {value}.")
        if not 0.0 < self.dirt_rel_height <= 1.0:
            raise ConfigError(
                f"'dirt_rel_height' must lie in (0, 1], got {self.dirt_rel_height}."
            )
        if self.dirt_dist_ratio <= 0.0:
            raise ConfigError(
                f"'dirt_dist_ratio' must be positive, got {self.dirt_dist_ratio}."
            )

    def to_dict(self) -> Dict[str, Any]:
        """JSON-compatible representation."""
        return {
            "grid": f"{self.grid.rows}x{self.grid.cols}",
            "operator": self.operator.value,
            "dark_threshold": self.dark_threshold,
            "dup_mad_threshold": self.dup_mad_threshold,
            "blur_ratio": self.blur_ratio,
            "dirt_prom_ratio": self.dirt_prom_ratio,
            "dirt_dist_ratio": self.dirt_dist_ratio,
            "dirt_rel_height": self.dirt_rel_height,
            "method": self.method.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> CoverageConfig:
        """
        Build a configuration from a (partial) dictionary.

        Raises
        ------
        ConfigError
            If unknown keys or invalid values are given.
        """
        data = dict(data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(
                f"Unknown coverage parameters: {', '.join(sorted(unknown))}."
            )

        grid = data.get("grid")
        if isinstance(grid, str):
            data["grid"] = SectorGrid.parse(grid)
        elif isinstance(grid, (list, tuple)):
            data["grid"] = SectorGrid(int(grid[0]), int(grid[1]))

        return cls(**data)
