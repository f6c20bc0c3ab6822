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
Focus stacking: Wavelet-based
=============================

Multilevel separable Haar transform with orthonormal scaling. For a `2 x 2`
block `[[a, b], [c, d]]` one level yields

- approximation `(a + b + c + d) / 2`
- horizontal detail `(a - b + c - d) / 2`
- vertical detail `(a + b - c - d) / 2`
- diagonal detail `(a - b - c + d) / 2`

Fusion selects each detail coefficient from the frame with the largest
magnitude (ties to the lower frame) and averages the approximation band.
"""
from __future__ import annotations

from typing import List, NamedTuple, Sequence, Tuple, Union

import torch
from tad_mctc.tools import memory
from torch.nn import functional as F

from .. import defaults
from ..imgcore.frame import ZStack
from ..typing import Tensor
from .result import FusionResult, StackMethod, as_frames

__all__ = ["HaarCoefficients", "haar_forward", "haar_inverse", "stack_wavelet"]


Details = Tuple[Tensor, Tensor, Tensor]


class HaarCoefficients(NamedTuple):
    """Multilevel Haar coefficients."""

    approx: Tensor
    """Approximation band of the coarsest level."""

    details: List[Details]
    """Horizontal, vertical and diagonal details, finest level first."""


def _forward(x: Tensor) -> Tuple[Tensor, Details]:
    a = x[..., 0::2, 0::2]
    b = x[..., 0::2, 1::2]
    c = x[..., 1::2, 0::2]
    d = x[..., 1::2, 1::2]
    return (
        0.5 * (a + b + c + d),
        (0.5 * (a - b + c - d), 0.5 * (a + b - c - d), 0.5 * (a - b - c + d)),
    )


def _inverse(ll: Tensor, details: Details) -> Tensor:
    lh, hl, hh = details
    h, w = ll.shape[-2:]

    out = ll.new_empty((*ll.shape[:-2], 2 * h, 2 * w))
    out[..., 0::2, 0::2] = 0.5 * (ll + lh + hl + hh)
    out[..., 0::2, 1::2] = 0.5 * (ll - lh + hl - hh)
    out[..., 1::2, 0::2] = 0.5 * (ll + lh - hl - hh)
    out[..., 1::2, 1::2] = 0.5 * (ll - lh - hl + hh)
    return out


def haar_forward(x: Tensor, levels: int) -> HaarCoefficients:
    """
    Multilevel 2D Haar transform.

    Parameters
    ----------
    x : Tensor
        Frame(s) of shape `(..., h, w)`, both sides divisible by `2**levels`.
    levels : int
        Number of levels, at least 1.

    Returns
    -------
    HaarCoefficients
        Approximation band and details of all levels.

    Raises
    ------
    ValueError
        If the frame cannot be halved `levels` times.
    """
    if levels < 1:
        raise ValueError(f"Number of levels must be positive, got {levels}.")

    h, w = x.shape[-2:]
    if h % 2**levels != 0 or w % 2**levels != 0:
        raise ValueError(
            f"Frame size {w}x{h} is not divisible by 2**{levels} = {2**levels}."
        )

    details = []
    approx = x
    for _ in range(levels):
        approx, d = _forward(approx)
        details.append(d)

    return HaarCoefficients(approx, details)


def haar_inverse(coeffs: HaarCoefficients) -> Tensor:
    """
    Inverse of :func:`haar_forward`.

    Example
    -------
    >>> import torch
    >>> x = torch.rand((8, 8), dtype=torch.double)
    >>> torch.allclose(haar_inverse(haar_forward(x, 3)), x, atol=1e-12)
    True
    """
    x = coeffs.approx
    for d in reversed(coeffs.details):
        x = _inverse(x, d)
    return x


def _select_max_abs(coef: Tensor) -> Tensor:
    idx = torch.argmax(torch.abs(coef), dim=0, keepdim=True)
    return torch.gather(coef, 0, idx).squeeze(0)


def stack_wavelet(
    frames: Union[ZStack, Tensor, Sequence[Tensor]],
    levels: int = defaults.WAVELET_LEVELS,
) -> FusionResult:
    """
    Wavelet-based focus stacking.

    Frames are padded by edge replication to multiples of `2**levels`,
    transformed, fused, transformed back, cropped and clamped to [0, 1].

    Parameters
    ----------
    frames : ZStack | Tensor | Sequence[Tensor]
        At least two frames of equal shape.
    levels : int, optional
        Number of Haar levels. Defaults to `4`.

    Returns
    -------
    FusionResult
        Fused image (no label map).

    Raises
    ------
    ValueError
        If `levels` is not positive or a frame side is smaller than
        `2**levels`.
    """
    if levels < 1:
        raise ValueError(f"Number of levels must be positive, got {levels}.")

    x = as_frames(frames)
    n, h, w = x.shape

    size = 2**levels
    if min(h, w) < size:
        raise ValueError(
            f"{levels} Haar levels need frames of at least {size}x{size} "
            f"pixels, got {w}x{h}."
        )

    ph, pw = -h % size, -w % size
    _check_memory(x, (n, h + ph, w + pw))

    padded = F.pad(x.unsqueeze(1), (0, pw, 0, ph), mode="replicate").squeeze(1)
    coeffs = haar_forward(padded, levels)

    fused = HaarCoefficients(
        approx=torch.mean(coeffs.approx, dim=0),
        details=[
            (_select_max_abs(lh), _select_max_abs(hl), _select_max_abs(hh))
            for lh, hl, hh in coeffs.details
        ],
    )
    image = haar_inverse(fused)[:h, :w].clamp(0.0, 1.0)

    return FusionResult(image=image, method=StackMethod.WAVELET, n_frames=n)


def _check_memory(frames: Tensor, size: Tuple[int, int, int]) -> None:
    """
    Check the memory needed for the transforms of all frames.

    Raises
    ------
    MemoryError
        If the estimate exceeds the total memory of the device.
    """
    # padded frames, coefficients and the magnitudes of one band
    mem = 3 * memory.memory_tensor(size, frames.dtype)
    free, total = memory.memory_device(frames.device)

    if mem > total:
        raise MemoryError(
            f"Estimated memory usage exceeds total available memory: {mem:.2f} "
            f"MB > {total:.2f} MB. Fuse fewer or smaller frames."
        )

    if mem > free:
        # pylint: disable=import-outside-toplevel
        from warnings import warn

        warn(
            "Estimated memory usage appears to exceed the available memory: "
            f"{mem:.2f} MB > {free:.2f} MB.",
            ResourceWarning,
        )
