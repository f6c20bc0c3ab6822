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
Focus stacking: Result types
============================
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import torch

from ..exception import DimensionMismatchError
from ..imgcore.frame import ZStack, check_frame
from ..typing import Tensor

__all__ = ["StackMethod", "FusionResult", "as_frames"]


class StackMethod(str, Enum):
    """
    Focus-stacking algorithms.
    """

    PIXEL = "pixel"
    NEIGHBOR = "neighbor"
    WAVELET = "wavelet"

    @classmethod
    def parse(cls, value: Union[str, StackMethod]) -> StackMethod:
        """Look up a method by (case-insensitive) name."""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError as e:
            names = ", ".join(m.value for m in cls)
            raise ValueError(
                f"Unknown stacking method '{value}', choose from: {names}."
            ) from e


@dataclass(frozen=True)
class FusionResult:
    """
    All-in-focus image and its provenance.
    """

    image: Tensor
    """Fused frame of shape `(h, w)`."""

    method: StackMethod
    """Algorithm that produced the image."""

    n_frames: int
    """Number of input frames."""

    label_map: Optional[Tensor] = None
    """Source frame per pixel (pixel- and neighbor-based only)."""

    def label_frame(self) -> Tensor:
        """
        Label map as frame, with indices scaled to [0, 1].

        Raises
        ------
        ValueError
            If the method does not produce a label map.
        """
        if self.label_map is None:
            raise ValueError(f"Method '{self.method.value}' has no label map.")
        scale = max(self.n_frames - 1, 1)
        return self.label_map.to(self.image.dtype) / scale


def as_frames(frames: Union[ZStack, Tensor, Sequence[Tensor]]) -> Tensor:
    """
    Collect at least two equally sized frames into a tensor `(n, h, w)`.

    Raises
    ------
    ValueError
        If fewer than two frames are given.
    DimensionMismatchError
        If the frames differ in shape.
    """
    if isinstance(frames, ZStack):
        x = frames.frames
    elif isinstance(frames, Tensor):
        x = frames
    else:
        if len(frames) < 2:
            raise ValueError(f"Fusion needs at least two frames, got {len(frames)}.")
        shapes = {tuple(f.shape) for f in frames}
        if len(shapes) > 1:
            raise DimensionMismatchError(
                f"Frames to fuse differ in shape: {sorted(shapes)}."
            )
        x = torch.stack(list(frames))

    if x.ndim != 3:
        raise DimensionMismatchError(
            f"Frames to fuse must have the shape (n, h, w), got {tuple(x.shape)}."
        )
    if x.shape[0] < 2:
        raise ValueError(f"Fusion needs at least two frames, got {x.shape[0]}.")
    if not x.is_floating_point():
        raise ValueError(f"Frames must be floating point, got {x.dtype}.")

    check_frame(x, batched=True)
    return x
