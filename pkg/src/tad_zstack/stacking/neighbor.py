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
Focus stacking: Neighbor-based
==============================

The frame is tiled into `block x block` tiles (trailing tiles may be smaller).
Every tile takes the frame with the largest TENG over the tile. The tile
labels are median filtered to remove isolated choices and expanded back to
pixels.
"""
from __future__ import annotations

import math
from typing import Sequence, Union

import torch
from torch.nn import functional as F

from .. import defaults
from ..imgcore.frame import ZStack
from ..typing import Tensor
from .focusmap import energy_map
from .pixel import compose
from .result import FusionResult, StackMethod, as_frames

__all__ = ["stack_neighbor", "median_relabel", "tile_scores"]


def tile_scores(frames: Tensor, block: int) -> Tensor:
    """
    TENG per tile.

    Parameters
    ----------
    frames : Tensor
        Frames of shape `(n, h, w)`.
    block : int
        Tile size in pixels.

    Returns
    -------
    Tensor
        Scores of shape `(n, ceil(h / block), ceil(w / block))`.
    """
    energy = energy_map(frames)
    n, h, w = energy.shape
    th, tw = math.ceil(h / block), math.ceil(w / block)

    energy = F.pad(energy, (0, tw * block - w, 0, th * block - h))
    return energy.reshape(n, th, block, tw, block).sum(dim=(2, 4))


def median_relabel(labels: Tensor, window: int = defaults.MEDIAN_WINDOW) -> Tensor:
    """
    Median filter of a label map with edge replication.

    Parameters
    ----------
    labels : Tensor
        Integer labels of shape `(h, w)`.
    window : int, optional
        Odd window size. Defaults to `3`.

    Returns
    -------
    Tensor
        Filtered labels of the same shape.

    Raises
    ------
    ValueError
        If the window is even or not positive.

    Example
    -------
    >>> import torch
    >>> labels = torch.zeros((3, 3), dtype=torch.long)
    >>> labels[1, 1] = 1
    >>> median_relabel(labels, 3).sum().item()
    0
    """
    if window < 1 or window % 2 == 0:
        raise ValueError(f"Median window must be odd and positive, got {window}.")
    if window == 1:
        return labels.clone()

    r = window // 2
    x = labels.to(torch.double).reshape(1, 1, *labels.shape)
    x = F.pad(x, (r, r, r, r), mode="replicate").reshape(
        labels.shape[0] + 2 * r, labels.shape[1] + 2 * r
    )

    windows = x.unfold(0, window, 1).unfold(1, window, 1)
    windows = windows.reshape(*labels.shape, window * window)

    # odd number of samples, the median is an actual label
    med = torch.median(windows, dim=-1).values
    return med.to(labels.dtype)


def stack_neighbor(
    frames: Union[ZStack, Tensor, Sequence[Tensor]],
    block: int = defaults.NEIGHBOR_BLOCK,
    median_window: int = defaults.MEDIAN_WINDOW,
) -> FusionResult:
    """
    Neighbor-based (block) focus stacking.

    Parameters
    ----------
    frames : ZStack | Tensor | Sequence[Tensor]
        At least two frames of equal shape.
    block : int, optional
        Tile size in pixels. Defaults to `16`.
    median_window : int, optional
        Odd median window on the tile grid. Defaults to `3`.

    Returns
    -------
    FusionResult
        Fused image with per-pixel labels.

    Raises
    ------
    ValueError
        If the block size is not positive or the median window is invalid.
    """
    if block < 1:
        raise ValueError(f"Block size must be positive, got {block}.")

    x = as_frames(frames)
    _, h, w = x.shape

    tiles = torch.argmax(tile_scores(x, block), dim=0)
    tiles = median_relabel(tiles, median_window)

    labels = tiles.repeat_interleave(block, dim=0).repeat_interleave(block, dim=1)
    labels = labels[:h, :w].contiguous()

    return FusionResult(
        image=compose(x, labels),
        method=StackMethod.NEIGHBOR,
        n_frames=x.shape[0],
        label_map=labels,
    )
