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
Focus measures: Sector grid
===========================

A frame is divided into a grid of near-equal rectangular sectors, and the
focus measure is evaluated per sector. Remainder pixels go to the last row
and column of sectors. A sector is excluded (invalid) if more than half of its
pixels are covered by the dark mask.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import torch

from .. import defaults
from ..exception import DimensionMismatchError
from ..imgcore.frame import check_frame
from ..typing import Tensor
from .operators import FMOperator, get_operator

__all__ = ["SectorGrid", "SectorFMMap", "sector_fm"]


@dataclass(frozen=True)
class SectorGrid:
    """
    Grid of `rows` x `cols` sectors.
    """

    rows: int = defaults.GRID_ROWS
    cols: int = defaults.GRID_COLS

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(
                f"Sector grid needs at least one row and column, got "
                f"{self.rows}x{self.cols}."
            )

    @classmethod
    def parse(cls, text: str) -> SectorGrid:
        """
        Parse a grid given as `"RxC"`, e.g. `"4x4"`.
        """
        try:
            rows, cols = (int(v) for v in text.lower().split("x"))
        except ValueError as e:
            raise ValueError(f"Invalid grid '{text}', expected 'RxC'.") from e
        return cls(rows, cols)

    def check(self, height: int, width: int) -> None:
        """
        Check that every sector admits a 3x3 stencil.

        Raises
        ------
        ValueError
            If the grid is too fine for the frame.
        """
        m = defaults.MIN_FRAME_SIZE
        if self.rows * m > height or self.cols * m > width:
            raise ValueError(
                f"Grid {self.rows}x{self.cols} too fine for {width}x{height} "
                f"frames (sectors must be at least {m}x{m})."
            )

    def edges(self, height: int, width: int) -> Tuple[List[int], List[int]]:
        """
        Row and column edges of the sectors.

        Returns
        -------
        Tuple[List[int], List[int]]
            `rows + 1` row edges and `cols + 1` column edges.
        """
        self.check(height, width)
        sh, sw = height // self.rows, width // self.cols
        rows = [r * sh for r in range(self.rows)] + [height]
        cols = [c * sw for c in range(self.cols)] + [width]
        return rows, cols


@dataclass(frozen=True)
class SectorFMMap:
    """
    Focus measure and validity of every sector.
    """

    grid: SectorGrid
    """The sector grid."""

    values: Tensor
    """Focus measures of shape `(..., rows, cols)`."""

    valid: Tensor
    """Validity of shape `(..., rows, cols)`, `False` marks dark sectors."""


def sector_fm(
    frame: Tensor,
    grid: SectorGrid,
    op: Union[str, FMOperator] = FMOperator.TENG,
    mask: Optional[Tensor] = None,
) -> SectorFMMap:
    """
    Evaluate a focus measure on every sector of a grid.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.
    grid : SectorGrid
        Sector grid.
    op : str | FMOperator, optional
        Focus-measure operator. Defaults to TENG.
    mask : Optional[Tensor], optional
        Dark mask of the frame shape. Defaults to `None` (nothing masked).

    Returns
    -------
    SectorFMMap
        Sector values and validity.

    Raises
    ------
    DimensionMismatchError
        If mask and frame shapes differ.
    """
    check_frame(frame, batched=True)
    if mask is not None and mask.shape != frame.shape:
        raise DimensionMismatchError(
            f"Mask shape {tuple(mask.shape)} does not match frame shape "
            f"{tuple(frame.shape)}."
        )

    fm = get_operator(op)
    h, w = frame.shape[-2:]
    redges, cedges = grid.edges(h, w)

    shape = (*frame.shape[:-2], grid.rows, grid.cols)
    values = torch.empty(shape, device=frame.device, dtype=frame.dtype)
    valid = torch.ones(shape, device=frame.device, dtype=torch.bool)

    for r in range(grid.rows):
        y0, y1 = redges[r], redges[r + 1]
        for c in range(grid.cols):
            x0, x1 = cedges[c], cedges[c + 1]
            values[..., r, c] = fm(frame[..., y0:y1, x0:x1])

            if mask is not None:
                masked = torch.sum(mask[..., y0:y1, x0:x1], dim=(-2, -1))
                npix = (y1 - y0) * (x1 - x0)
                valid[..., r, c] = masked <= defaults.SECTOR_MASKED_FRACTION * npix

    return SectorFMMap(grid=grid, values=values, valid=valid)
