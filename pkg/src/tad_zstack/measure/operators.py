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
Focus measures: Operators
=========================

Standard forms of the focus-measure operators. Every operator sums over the
valid stencil positions only, i.e., no padding is applied, and works on single
frames `(h, w)` as well as on batches `(..., h, w)`.

- VOLL4: Vollath's F4 autocorrelation (lag-1 minus lag-2 row products)
- TENG: Tenengrad, summed squared Sobel responses over interior pixels
- LAPM: sum-modified Laplacian with unit step
- LAPV: population variance of the 4-neighbor Laplacian
"""
from __future__ import annotations

from enum import Enum
from typing import Union

import torch

from ..imgcore.frame import check_frame
from ..typing import FocusMeasure, Tensor

__all__ = [
    "FMOperator",
    "fm_voll4",
    "fm_teng",
    "fm_lapm",
    "fm_lapv",
    "sobel_energy",
    "get_operator",
]


class FMOperator(str, Enum):
    """
    Available focus-measure operators.
    """

    VOLL4 = "voll4"
    TENG = "teng"
    LAPM = "lapm"
    LAPV = "lapv"

    @classmethod
    def parse(cls, value: Union[str, FMOperator]) -> FMOperator:
        """
        Look up an operator by (case-insensitive) name.

        Raises
        ------
        ValueError
            If the name is unknown.
        """
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError as e:
            names = ", ".join(op.value for op in cls)
            raise ValueError(
                f"Unknown focus measure '{value}', choose from: {names}."
            ) from e


def fm_voll4(frame: Tensor) -> Tensor:
    """
    Vollath's F4 autocorrelation focus measure.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.

    Returns
    -------
    Tensor
        Focus measure of shape `(...)`. Note that F4 is not zero on constant
        frames: the lag sums differ in the number of terms.
    """
    check_frame(frame, batched=True)
    lag1 = torch.sum(frame[..., :-1] * frame[..., 1:], dim=(-2, -1))
    lag2 = torch.sum(frame[..., :-2] * frame[..., 2:], dim=(-2, -1))
    return lag1 - lag2


def sobel_energy(frame: Tensor) -> Tensor:
    """
    Squared Sobel gradient magnitude `Gx² + Gy²` at the interior pixels.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.

    Returns
    -------
    Tensor
        Energy of shape `(..., h-2, w-2)`.
    """
    top = frame[..., :-2, :]
    mid = frame[..., 1:-1, :]
    bot = frame[..., 2:, :]

    # vertical smoothing for Gx, horizontal smoothing for Gy
    vsum = top + 2.0 * mid + bot
    gx = vsum[..., 2:] - vsum[..., :-2]

    vdiff = bot - top
    gy = vdiff[..., :-2] + 2.0 * vdiff[..., 1:-1] + vdiff[..., 2:]

    return gx * gx + gy * gy


def fm_teng(frame: Tensor) -> Tensor:
    """
    Tenengrad focus measure.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.

    Returns
    -------
    Tensor
        Sum of squared Sobel responses of shape `(...)`.
    """
    check_frame(frame, batched=True)
    return torch.sum(sobel_energy(frame), dim=(-2, -1))


def fm_lapm(frame: Tensor) -> Tensor:
    """
    Sum-modified Laplacian.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.

    Returns
    -------
    Tensor
        Focus measure of shape `(...)`.
    """
    check_frame(frame, batched=True)
    mid = frame[..., 1:-1, 1:-1]

    # |l + r - 2c| equals |2c - l - r|, built in place on the neighbor sum
    dx = torch.add(frame[..., 1:-1, :-2], frame[..., 1:-1, 2:])
    dx.sub_(mid, alpha=2.0).abs_()
    dy = torch.add(frame[..., :-2, 1:-1], frame[..., 2:, 1:-1])
    dy.sub_(mid, alpha=2.0).abs_()

    return torch.sum(dx.add_(dy), dim=(-2, -1))


def fm_lapv(frame: Tensor) -> Tensor:
    """
    Variance of the Laplacian.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.

    Returns
    -------
    Tensor
        Population variance of the 4-neighbor Laplacian over the interior
        pixels, shape `(...)`.
    """
    check_frame(frame, batched=True)
    lap = (
        frame[..., :-2, 1:-1]
        + frame[..., 2:, 1:-1]
        + frame[..., 1:-1, :-2]
        + frame[..., 1:-1, 2:]
        - 4.0 * frame[..., 1:-1, 1:-1]
    )
    mean = torch.mean(lap, dim=(-2, -1), keepdim=True)
    return torch.mean((lap - mean) ** 2, dim=(-2, -1))


_OPERATORS = {
    FMOperator.VOLL4: fm_voll4,
    FMOperator.TENG: fm_teng,
    FMOperator.LAPM: fm_lapm,
    FMOperator.LAPV: fm_lapv,
}


def get_operator(op: Union[str, FMOperator]) -> FocusMeasure:
    """
    Resolve an operator name to its function.

    Parameters
    ----------
    op : str | FMOperator
        Operator or its name.

    Returns
    -------
    FocusMeasure
        Function mapping frames `(..., h, w)` to focus measures `(...)`.
    """
    return _OPERATORS[FMOperator.parse(op)]
