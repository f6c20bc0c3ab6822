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
Focus stacking: Pixel-based
===========================

Every output pixel is copied from the frame with the largest windowed TENG
focus map at that pixel. Fast, but noisy in textureless regions.
"""
from __future__ import annotations

from typing import Sequence, Union

import torch

from .. import defaults
from ..imgcore.frame import ZStack
from ..typing import Tensor
from .focusmap import focus_map_teng
from .result import FusionResult, StackMethod, as_frames

__all__ = ["stack_pixel", "compose"]


def compose(frames: Tensor, labels: Tensor) -> Tensor:
    """
    Copy every pixel from the frame given by the label map.

    Parameters
    ----------
    frames : Tensor
        Frames of shape `(n, h, w)`.
    labels : Tensor
        Frame indices of shape `(h, w)`.

    Returns
    -------
    Tensor
        Composed frame of shape `(h, w)`.
    """
    return torch.gather(frames, 0, labels.unsqueeze(0)).squeeze(0)


def stack_pixel(
    frames: Union[ZStack, Tensor, Sequence[Tensor]],
    window: int = defaults.PIXEL_WINDOW,
) -> FusionResult:
    """
    Pixel-based focus stacking.

    Parameters
    ----------
    frames : ZStack | Tensor | Sequence[Tensor]
        At least two frames of equal shape.
    window : int, optional
        Odd focus map window. Defaults to `9`.

    Returns
    -------
    FusionResult
        Fused image with per-pixel labels. Ties go to the lower frame.
    """
    x = as_frames(frames)

    # argmax returns the first maximum, i.e., the lower frame index
    labels = torch.argmax(focus_map_teng(x, window), dim=0)

    return FusionResult(
        image=compose(x, labels),
        method=StackMethod.PIXEL,
        n_frames=x.shape[0],
        label_map=labels,
    )
