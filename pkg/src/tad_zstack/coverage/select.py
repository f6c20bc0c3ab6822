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
Coverage: Selection
===================

Sector-based frame selection. Each sector of the grid is owned by the frame
with the highest sector focus measure among the frames in which the sector is
valid (not dark). Ties go to the lower frame index.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

import torch

from ..exception import EmptyCoverageError, EmptyStackError
from ..imgcore.frame import ZStack
from ..imgcore.ops import dark_mask
from ..measure.sector import SectorFMMap, sector_fm
from ..typing import Tensor
from .config import CoverageConfig

__all__ = ["sector_maps", "sector_owners", "select_parts", "select_best3"]


def sector_maps(stack: ZStack, cfg: CoverageConfig) -> SectorFMMap:
    """
    Sector focus measures and validities of all frames.

    Returns
    -------
    SectorFMMap
        Maps with values and validities of shape `(n, rows, cols)`.
    """
    if len(stack) == 0:
        raise EmptyStackError("Cannot select frames of an empty stack.")

    masks = dark_mask(stack.frames, cfg.dark_threshold)
    return sector_fm(stack.frames, cfg.grid, cfg.operator, masks)


def sector_owners(fmap: SectorFMMap, allowed: Optional[Tensor] = None) -> Tensor:
    """
    Winning frame per sector.

    Parameters
    ----------
    fmap : SectorFMMap
        Maps of shape `(n, rows, cols)`.
    allowed : Optional[Tensor], optional
        Boolean mask of shape `(n,)` restricting the candidate frames. Sectors
        that are invalid in all allowed frames but valid elsewhere fall back to
        the best allowed frame regardless of validity.

    Returns
    -------
    Tensor
        Frame indices of shape `(rows, cols)`, `-1` for sectors that are
        invalid in every frame.
    """
    values, valid = fmap.values, fmap.valid
    ninf = torch.tensor(float("-inf"), device=values.device, dtype=values.dtype)

    if allowed is None:
        allowed = torch.ones(values.shape[0], dtype=torch.bool, device=values.device)
    allowed = allowed.view(-1, 1, 1)

    usable = valid & allowed
    owner = torch.argmax(torch.where(usable, values, ninf), dim=0)

    fallback = torch.argmax(
        torch.where(allowed.expand_as(valid), values, ninf), dim=0
    )
    owner = torch.where(usable.any(dim=0), owner, fallback)

    return torch.where(valid.any(dim=0), owner, torch.full_like(owner, -1))


def select_parts(
    stack: ZStack, cfg: CoverageConfig, fmap: Optional[SectorFMMap] = None
) -> Tuple[List[int], Tensor]:
    """
    "Parts" selection: every valid sector contributes its sharpest frame.

    Parameters
    ----------
    stack : ZStack
        Non-empty stack.
    cfg : CoverageConfig
        Coverage configuration.
    fmap : Optional[SectorFMMap], optional
        Precomputed sector maps of the stack.

    Returns
    -------
    Tuple[List[int], Tensor]
        Sorted unique owner frames and the sector owner map.

    Raises
    ------
    EmptyCoverageError
        If every sector is invalid in every frame.
    """
    if fmap is None:
        fmap = sector_maps(stack, cfg)

    owner = sector_owners(fmap)
    indices = sorted({int(i) for i in owner.flatten().tolist() if i >= 0})
    if len(indices) == 0:
        raise EmptyCoverageError("Every sector is dark in every frame.")

    return indices, owner


def select_best3(
    stack: ZStack, cfg: CoverageConfig, fmap: Optional[SectorFMMap] = None
) -> Tuple[List[int], Tensor]:
    """
    "Best3" selection: the (at most) three frames that own most sectors.

    Every valid sector votes for its sharpest frame. Ties in the number of
    votes go to the lower frame index. Sectors are then reassigned to their
    best frame among the chosen ones.

    Parameters
    ----------
    stack : ZStack
        Non-empty stack.
    cfg : CoverageConfig
        Coverage configuration.
    fmap : Optional[SectorFMMap], optional
        Precomputed sector maps of the stack.

    Returns
    -------
    Tuple[List[int], Tensor]
        Chosen frames (sorted) and the restricted sector owner map.

    Raises
    ------
    EmptyCoverageError
        If every sector is invalid in every frame.
    """
    if fmap is None:
        fmap = sector_maps(stack, cfg)

    owner = sector_owners(fmap)
    winners = owner[owner >= 0]
    if winners.numel() == 0:
        raise EmptyCoverageError("Every sector is dark in every frame.")

    votes = torch.bincount(winners, minlength=len(stack)).tolist()
    ranked = sorted(
        (i for i, v in enumerate(votes) if v > 0), key=lambda i: (-votes[i], i)
    )
    indices = sorted(ranked[:3])

    allowed = torch.zeros(len(stack), dtype=torch.bool, device=owner.device)
    allowed[indices] = True
    return indices, sector_owners(fmap, allowed)
