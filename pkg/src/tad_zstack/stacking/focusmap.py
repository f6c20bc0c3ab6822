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
Focus stacking: Focus maps
==========================

Per-pixel sharpness from the Sobel energy `Gx² + Gy²`. The energy is defined
at interior pixels; border pixels and stencil positions outside the frame
contribute zero.
"""
from __future__ import annotations

import torch
from torch.nn import functional as F

from ..imgcore.frame import check_frame
from ..measure.operators import sobel_energy
from ..typing import Tensor

__all__ = ["energy_map", "focus_map_teng"]


def energy_map(frame: Tensor) -> Tensor:
    """
    Sobel energy of the frame shape with a zero border.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.

    Returns
    -------
    Tensor
        Energy of shape `(..., h, w)`.
    """
    check_frame(frame, batched=True)
    return F.pad(sobel_energy(frame), (1, 1, 1, 1))


def focus_map_teng(frame: Tensor, window: int) -> Tensor:
    """
    Windowed TENG focus map.

    Parameters
    ----------
    frame : Tensor
        Frame(s) of shape `(..., h, w)`.
    window : int
        Odd window size, at least 3.

    Returns
    -------
    Tensor
        Sum of the Sobel energy over the window centered at each pixel, of
        shape `(..., h, w)`.

    Raises
    ------
    ValueError
        If the window is even or smaller than 3.

    Example
    -------
    >>> import torch
    >>> ramp = torch.tensor([[0, 1, 2], [0, 1, 2], [0, 1, 2.0]])
    >>> focus_map_teng(ramp, 3)[1, 1].item()
    64.0
    """
    if window < 3 or window % 2 == 0:
        raise ValueError(f"Focus map window must be odd and >= 3, got {window}.")

    check_frame(frame, batched=True)
    r = window // 2

    fmap = _window_sum(sobel_energy(frame), r, -1)
    return _window_sum(fmap, r, -2)


def _window_sum(energy: Tensor, r: int, dim: int) -> Tensor:
    """
    Sums over `2r + 1` samples along `dim` (-1 or -2) of an interior energy
    map, from the cumulative sum. The padding adds the zero border of
    :func:`energy_map` and the zero stencil positions outside the frame.
    """
    pad = (r + 2, r + 1) if dim == -1 else (0, 0, r + 2, r + 1)
    c = F.pad(energy, pad).cumsum_(dim)

    n = 2 * r + 1
    return c.narrow(dim, n, c.shape[dim] - n) - c.narrow(dim, 0, c.shape[dim] - n)
