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
Focus measures: Focal curve
===========================

The focal curve holds one focus-measure value per frame together with the
provenance of its preprocessing (smoothing window, mirror offset).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np
import torch

from ..exception import EmptyStackError
from ..imgcore.frame import ZStack
from ..typing import Tensor
from .operators import FMOperator, get_operator

__all__ = ["FocalCurve", "focal_curve"]


@dataclass(frozen=True)
class FocalCurve:
    """
    Focus-measure values as a function of the frame index.
    """

    values: Tensor
    """One focus-measure value per (possibly mirrored) sample, shape `(n,)`."""

    source_stride: int = 1
    """Z-steps between two samples of the source stack."""

    mirror_offset: int = 0
    """Number of samples prepended by mirroring (0 if unmirrored)."""

    smooth_window: int = 1
    """Width of the moving average applied to the values (1 if unsmoothed)."""

    source_length: Optional[int] = field(default=None)
    """Number of samples of the unmirrored curve."""

    def __post_init__(self) -> None:
        if self.values.ndim != 1:
            raise ValueError(
                f"Curve values must be one-dimensional, got shape "
                f"{tuple(self.values.shape)}."
            )
        if self.values.numel() == 0:
            raise ValueError("A focal curve needs at least one value.")
        if not bool(torch.all(torch.isfinite(self.values))):
            raise ValueError("Focal curve values must be finite.")
        if not 0 <= self.mirror_offset < self.values.numel():
            raise ValueError(
                f"Mirror offset {self.mirror_offset} outside of curve with "
                f"{self.values.numel()} samples."
            )
        if self.source_length is None:
            object.__setattr__(self, "source_length", self.values.numel())

    def __len__(self) -> int:
        return self.values.numel()

    @property
    def n_source(self) -> int:
        """Number of samples of the unmirrored curve."""
        assert self.source_length is not None
        return self.source_length

    @property
    def is_mirrored(self) -> bool:
        """Whether the curve was extended by mirroring."""
        return len(self) != self.n_source

    def numpy(self) -> np.ndarray:
        """Values as double precision numpy array."""
        return self.values.detach().cpu().numpy().astype(np.float64)

    def with_values(self, values: Tensor, **changes: int) -> FocalCurve:
        """Copy of the curve with new values and updated provenance."""
        return replace(self, values=values, **changes)


def focal_curve(
    stack: ZStack,
    op: Union[str, FMOperator] = FMOperator.VOLL4,
    chunk_size: Optional[int] = None,
) -> FocalCurve:
    """
    Evaluate a focus-measure operator on every frame of a stack.

    Parameters
    ----------
    stack : ZStack
        Input stack.
    op : str | FMOperator, optional
        Focus-measure operator. Defaults to VOLL4.
    chunk_size : Optional[int], optional
        Number of frames evaluated at once. Defaults to `None` (all frames).

    Returns
    -------
    FocalCurve
        Unsmoothed, unmirrored curve with `source_stride = stack.stride`.

    Raises
    ------
    EmptyStackError
        If the stack holds no frames.
    """
    if len(stack) == 0:
        raise EmptyStackError("Cannot build a focal curve of an empty stack.")

    fm = get_operator(op)
    if chunk_size is None:
        values = fm(stack.frames)
    else:
        values = torch.cat(
            [
                fm(stack.frames[i : i + chunk_size])
                for i in range(0, len(stack), chunk_size)
            ]
        )

    return FocalCurve(values=values, source_stride=stack.stride)
