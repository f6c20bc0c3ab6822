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
Image core: Pixel operations
============================

Downscaling, frame differences and dark masks. All functions accept a single
frame of shape `(h, w)` or a batch of frames of shape `(..., h, w)`.
"""
from __future__ import annotations

import torch
from torch.nn import functional as F

from .. import defaults
from ..exception import DimensionMismatchError
from ..typing import Tensor
from .frame import check_frame

__all__ = ["downscale", "frame_diff_mad", "dark_mask"]


def downscale(frame: Tensor, new_width: int, new_height: int) -> Tensor:
    """
    Area-average (box filter) downscaling.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.
    new_width : int
        Target width, `3 <= new_width <= w`.
    new_height : int
        Target height, `3 <= new_height <= h`.

    Returns
    -------
    Tensor
        Downscaled frame(s) of shape `(..., new_height, new_width)`.

    Raises
    ------
    ValueError
        If the target is smaller than 3x3 or larger than the source.
    """
    check_frame(frame, batched=True)
    h, w = frame.shape[-2:]

    if min(new_width, new_height) < defaults.MIN_FRAME_SIZE:
        raise ValueError(
            f"Target size {new_width}x{new_height} is smaller than "
            f"{defaults.MIN_FRAME_SIZE}x{defaults.MIN_FRAME_SIZE}."
        )
    if new_width > w or new_height > h:
        raise ValueError(
            f"Target size {new_width}x{new_height} exceeds source size {w}x{h}."
        )

    if (new_height, new_width) == (h, w):
        return frame.clone()

    batch = frame.shape[:-2]
    x = frame.reshape(-1, 1, h, w)
    out = F.adaptive_avg_pool2d(x, (new_height, new_width))
    return out.reshape(*batch, new_height, new_width).clamp(0.0, 1.0)


def frame_diff_mad(a: Tensor, b: Tensor) -> Tensor:
    """
    Mean absolute intensity difference of two frames.

    Parameters
    ----------
    a : Tensor
        Frame(s) of shape `(..., h, w)`.
    b : Tensor
        Frame(s) of shape `(..., h, w)`, broadcastable against `a`.

    Returns
    -------
    Tensor
        Mean absolute difference in [0, 1] of shape `(...)`.

    Raises
    ------
    DimensionMismatchError
        If the frame sizes differ.
    """
    if a.shape[-2:] != b.shape[-2:]:
        raise DimensionMismatchError(
            f"Cannot compare frames of shape {tuple(a.shape[-2:])} and "
            f"{tuple(b.shape[-2:])}."
        )
    return torch.mean(torch.abs(a - b), dim=(-2, -1))


def dark_mask(frame: Tensor, threshold: float = defaults.DARK_THRESHOLD) -> Tensor:
    """
    Binary threshold mask of dark pixels (vignetted corners).

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.
    threshold : float, optional
        Intensity threshold in (0, 1). Defaults to `0.04`.

    Returns
    -------
    Tensor
        Boolean mask, `True` where the intensity is below `threshold`.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"Dark threshold must lie in (0, 1), got {threshold}.")
    return frame < threshold
