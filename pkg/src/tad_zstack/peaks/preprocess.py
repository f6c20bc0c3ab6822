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
Peak search: Preprocessing
==========================

Smoothing and mirror extension of focal curves.
"""
from __future__ import annotations

import torch

from .. import defaults
from ..measure.curve import FocalCurve

__all__ = ["default_smooth_window", "smoothen", "mirror_extend"]


def default_smooth_window(n: int) -> int:
    """
    Default smoothing window `max(3, round(n/20))`, forced to be odd.

    Parameters
    ----------
    n : int
        Number of curve samples.

    Returns
    -------
    int
        Odd window size.
    """
    window = max(defaults.SMOOTH_MIN_WINDOW, int(round(n / defaults.SMOOTH_DIVISOR)))
    return window if window % 2 == 1 else window + 1


def smoothen(curve: FocalCurve, window: int) -> FocalCurve:
    """
    Centered moving average.

    Near the ends the window is truncated to the available samples, i.e., the
    first sample of `[0, 3, 0]` with window 3 is the mean of two samples.

    Parameters
    ----------
    curve : FocalCurve
        Input curve.
    window : int
        Odd, positive window size.

    Returns
    -------
    FocalCurve
        Smoothed curve with `smooth_window` recorded.

    Raises
    ------
    ValueError
        If the window is even or not positive.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError(f"Smoothing window must be odd and positive, got {window}.")

    if window == 1:
        return curve.with_values(curve.values.clone())

    x = curve.values
    half = window // 2
    nan = torch.full((half,), float("nan"), device=x.device, dtype=x.dtype)

    # windows of shape (n, window), out-of-range samples are NaN
    windows = torch.cat([nan, x, nan]).unfold(0, window, 1)

    # averaging deviations from the center keeps constant curves exact
    values = x + torch.nanmean(windows - x.unsqueeze(-1), dim=-1)
    return curve.with_values(values, smooth_window=window)


def mirror_extend(curve: FocalCurve) -> FocalCurve:
    """
    Extend both ends of the curve by mirroring its first and second half.

    The left extension is the reversed first `ceil(n/2)` samples and the right
    extension the reversed samples from `floor(n/2)` on. Local maxima close to
    the curve ends thereby obtain a meaningful prominence.

    Parameters
    ----------
    curve : FocalCurve
        Unmirrored input curve with at least two samples.

    Returns
    -------
    FocalCurve
        Extended curve with `mirror_offset = ceil(n/2)`.

    Raises
    ------
    ValueError
        If the curve is shorter than two samples or already mirrored.
    """
    if curve.is_mirrored or curve.mirror_offset != 0:
        raise ValueError("Curve is already mirrored.")

    x = curve.values
    n = x.numel()
    if n < 2:
        raise ValueError(f"Mirroring needs at least two samples, got {n}.")

    offset = (n + 1) // 2
    left = torch.flip(x[:offset], dims=(0,))
    right = torch.flip(x[n // 2 :], dims=(0,))

    return curve.with_values(
        torch.cat([left, x, right]), mirror_offset=offset, source_length=n
    )
