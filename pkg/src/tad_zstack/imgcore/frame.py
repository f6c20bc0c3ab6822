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
Image core: Frames and stacks
=============================

A frame is a plain tensor of shape ``(h, w)``. The :class:`ZStack` bundles an
ordered batch of equally sized frames with its acquisition metadata.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Union

import torch

from .. import defaults
from ..exception import DimensionMismatchError, EmptyStackError
from ..typing import Any, NoReturn, Tensor

__all__ = ["ZStack", "check_frame"]


def check_frame(frame: Tensor, batched: bool = False) -> None:
    """
    Check the shape and value range of a frame.

    Parameters
    ----------
    frame : Tensor
        Frame of shape `(h, w)` or, if `batched`, frames of shape `(..., h, w)`.
    batched : bool, optional
        Allow leading batch dimensions. Defaults to `False`.

    Raises
    ------
    ValueError
        If the frame is smaller than 3x3 or has the wrong number of dimensions.
    """
    if batched is False and frame.ndim != 2:
        raise ValueError(
            f"A frame must be two-dimensional, got shape {tuple(frame.shape)}."
        )
    if frame.ndim < 2:
        raise ValueError(
            f"Frames need at least two dimensions, got shape {tuple(frame.shape)}."
        )

    h, w = frame.shape[-2:]
    if h < defaults.MIN_FRAME_SIZE or w < defaults.MIN_FRAME_SIZE:
        raise ValueError(
            f"Frames must be at least {defaults.MIN_FRAME_SIZE}x"
            f"{defaults.MIN_FRAME_SIZE} pixels, got {w}x{h}."
        )


class ZStack:
    """
    Ordered sequence of grayscale frames taken at increasing z-positions.
    """

    frames: Tensor
    """Frames of shape `(n, h, w)` with intensities in [0, 1]."""

    stride: int
    """Z-step between consecutive frames in motor steps."""

    resolution_tag: str
    """Free-form resolution label, e.g. `"640x480"`."""

    names: List[str]
    """Source file names of the frames (empty for generated stacks)."""

    __slots__ = ["frames", "stride", "resolution_tag", "names", "__device", "__dtype"]

    def __init__(
        self,
        frames: Union[Tensor, Sequence[Tensor]],
        stride: int = 1,
        resolution_tag: Optional[str] = None,
        names: Optional[Sequence[str]] = None,
        device: Optional[torch.device] = None,
        dtype: Optional[torch.dtype] = None,
    ) -> None:
        if not isinstance(frames, Tensor):
            frames = _stack_frames(frames, device=device, dtype=dtype)

        if frames.ndim != 3:
            raise DimensionMismatchError(
                "Stack frames must have the shape (n, h, w), got "
                f"{tuple(frames.shape)}."
            )
        if not frames.is_floating_point():
            raise ValueError(f"Frames must be floating point, got {frames.dtype}.")

        if frames.shape[0] > 0:
            check_frame(frames, batched=True)
            if torch.any(frames < 0.0) or torch.any(frames > 1.0):
                raise ValueError("Frame intensities must lie within [0, 1].")

        if stride < 1:
            raise ValueError(f"Stride must be a positive integer, got {stride}.")

        if names is not None and len(names) != frames.shape[0]:
            raise ValueError(
                f"Got {len(names)} names for {frames.shape[0]} frames."
            )

        self.frames = frames.to(
            device=device if device is not None else frames.device,
            dtype=dtype if dtype is not None else frames.dtype,
        )
        self.stride = int(stride)
        self.resolution_tag = (
            resolution_tag
            if resolution_tag is not None
            else f"{self.frames.shape[-1]}x{self.frames.shape[-2]}"
        )
        self.names = list(names) if names is not None else []

        self.__device = self.frames.device
        self.__dtype = self.frames.dtype

    def __len__(self) -> int:
        return self.frames.shape[0]

    def __getitem__(self, index: int) -> Tensor:
        return self.frames[index]

    @property
    def height(self) -> int:
        """Frame height in pixels."""
        return self.frames.shape[-2]

    @property
    def width(self) -> int:
        """Frame width in pixels."""
        return self.frames.shape[-1]

    @property
    def device(self) -> torch.device:
        """The device on which the `ZStack` object resides."""
        return self.__device

    @device.setter
    def device(self, *_: Any) -> NoReturn:
        """
        Instruct users to use the ".to" method if wanting to change device.
        """
        raise AttributeError("Move object to device using the `.to` method")

    @property
    def dtype(self) -> torch.dtype:
        """Floating point dtype used by the frames."""
        return self.__dtype

    def _replace(
        self,
        frames: Tensor,
        stride: Optional[int] = None,
        names: Optional[List[str]] = None,
    ) -> ZStack:
        return self.__class__(
            frames,
            stride=self.stride if stride is None else stride,
            resolution_tag=self.resolution_tag,
            names=names,
        )

    def subset(self, indices: Sequence[int]) -> ZStack:
        """
        Select frames by index, keeping their order as given.

        Parameters
        ----------
        indices : Sequence[int]
            Frame indices.

        Returns
        -------
        ZStack
            Stack with the selected frames and the same stride.
        """
        idx = [int(i) for i in indices]
        names = [self.names[i] for i in idx] if self.names else None
        index = torch.tensor(idx, dtype=torch.long, device=self.device)
        return self._replace(self.frames.index_select(0, index), names=names)

    def window(self, start: int, end: int) -> ZStack:
        """
        Frames `start` to `end` (both inclusive).
        """
        if not 0 <= start <= end < len(self):
            raise IndexError(
                f"Window [{start}, {end}] outside of stack with {len(self)} frames."
            )
        names = self.names[start : end + 1] if self.names else None
        return self._replace(self.frames[start : end + 1], names=names)

    def subsample(self, stride: int, offset: int = 0) -> ZStack:
        """
        Every `stride`-th frame starting at `offset`, i.e., a coarse scan of
        this stack. The stride of the result is scaled accordingly.
        """
        if stride < 1:
            raise ValueError(f"Stride must be a positive integer, got {stride}.")
        names = self.names[offset::stride] if self.names else None
        return self._replace(
            self.frames[offset::stride], stride=self.stride * stride, names=names
        )

    def type(self, dtype: torch.dtype) -> ZStack:
        """
        Returns a copy of the `ZStack` instance with specified floating point
        type.

        Parameters
        ----------
        dtype : torch.dtype
            Floating point type.

        Returns
        -------
        ZStack
            A copy of the `ZStack` instance with the specified dtype.
        """
        if self.dtype == dtype:
            return self
        return self.__class__(
            self.frames.type(dtype),
            stride=self.stride,
            resolution_tag=self.resolution_tag,
            names=self.names or None,
        )

    def to(
        self,
        device: Optional[torch.device] = None,
        dtype: Optional[torch.dtype] = None,
    ) -> ZStack:
        """
        Returns a copy of the `ZStack` instance on the specified device and
        with the specified dtype.
        """
        if device == self.device and dtype in (None, self.dtype):
            return self
        return self.__class__(
            self.frames,
            stride=self.stride,
            resolution_tag=self.resolution_tag,
            names=self.names or None,
            device=device,
            dtype=dtype,
        )

    def __str__(self) -> str:  # pragma: no cover
        return (
            f"{self.__class__.__name__}(n_frames={len(self)}, "
            f"height={self.height}, width={self.width}, stride={self.stride}, "
            f"dtype={self.dtype}, device={self.device})"
        )

    def __repr__(self) -> str:  # pragma: no cover
        return str(self)


def _stack_frames(
    frames: Sequence[Tensor],
    device: Optional[torch.device] = None,
    dtype: Optional[torch.dtype] = None,
) -> Tensor:
    if len(frames) == 0:
        raise EmptyStackError("Cannot build a stack from an empty frame list.")

    shape = frames[0].shape
    for i, frame in enumerate(frames):
        if frame.shape != shape:
            raise DimensionMismatchError(
                f"Frame {i} has shape {tuple(frame.shape)}, expected "
                f"{tuple(shape)}."
            )

    if dtype is None:
        dtype = frames[0].dtype if frames[0].is_floating_point() else torch.double
    if device is None:
        device = frames[0].device

    return torch.stack(list(frames)).to(device=device, dtype=dtype)
