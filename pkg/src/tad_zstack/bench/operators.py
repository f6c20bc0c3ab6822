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
Benchmarks: Focus-measure operators
===================================

Runtime of the focus-measure operators as function of the frame resolution.
Frames are seeded uniform noise, so every operator sees the same input.
"""
from __future__ import annotations

import logging
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import torch

from .. import defaults
from ..measure.operators import FMOperator, get_operator
from ..typing import Tensor
from .timing import time_callable

__all__ = ["RESOLUTIONS", "parse_resolution", "random_frames", "bench_operators"]

logger = logging.getLogger(__name__)

RESOLUTIONS: Tuple[Tuple[int, int], ...] = (
    (1920, 1080),
    (1280, 720),
    (640, 480),
    (320, 240),
    (160, 120),
)
"""Default resolutions `(width, height)`."""


def parse_resolution(text: str) -> Tuple[int, int]:
    """
    Parse `"WxH"` into `(width, height)`.

    Example
    -------
    >>> parse_resolution("1920x1080")
    (1920, 1080)
    """
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError as e:
        raise ValueError(f"Invalid resolution '{text}', expected 'WxH'.") from e
    if w < defaults.MIN_FRAME_SIZE or h < defaults.MIN_FRAME_SIZE:
        raise ValueError(f"Resolution {w}x{h} is too small.")
    return w, h


def random_frames(
    width: int,
    height: int,
    n: int = 1,
    seed: int = 0,
    device: Optional[torch.device] = None,
    dtype: torch.dtype = torch.double,
) -> Tensor:
    """
    Seeded uniform frames of shape `(n, height, width)`.
    """
    gen = torch.Generator().manual_seed(seed)
    frames = torch.rand((n, height, width), generator=gen, dtype=dtype)
    return frames.to(device) if device is not None else frames


def bench_operators(
    resolutions: Sequence[Union[str, Tuple[int, int]]] = RESOLUTIONS,
    repeats: int = defaults.BENCH_REPEATS,
    operators: Optional[Sequence[Union[str, FMOperator]]] = None,
    seed: int = 0,
    device: Optional[torch.device] = None,
    dtype: torch.dtype = torch.double,
) -> List[Dict[str, Any]]:
    """
    Time every operator on every resolution.

    Parameters
    ----------
    resolutions : Sequence[str | Tuple[int, int]], optional
        Resolutions as `"WxH"` or `(width, height)`.
    repeats : int, optional
        Timed repetitions per entry. Defaults to `30`.
    operators : Optional[Sequence[str | FMOperator]], optional
        Operators to time. Defaults to all of them.
    seed : int, optional
        Seed of the random frames. Defaults to `0`.

    Returns
    -------
    List[Dict[str, Any]]
        One row per (operator, resolution) with the timing statistics.

    Raises
    ------
    ValueError
        If fewer than 30 repetitions are requested.
    """
    if repeats < defaults.BENCH_REPEATS:
        raise ValueError(
            f"Operator timings need at least {defaults.BENCH_REPEATS} "
            f"repetitions, got {repeats}."
        )

    ops = [FMOperator.parse(op) for op in (operators or list(FMOperator))]
    sizes = [parse_resolution(r) if isinstance(r, str) else r for r in resolutions]

    rows = []
    for w, h in sizes:
        frame = random_frames(w, h, 1, seed, device, dtype)[0]
        for op in ops:
            fm = get_operator(op)
            stats = time_callable(partial(fm, frame), repeats=repeats)
            logger.info(
                "%s at %dx%d: %.3f ms (CI %.3f-%.3f).",
                op.value,
                w,
                h,
                stats.median_ms,
                stats.ci_low_ms,
                stats.ci_high_ms,
            )
            rows.append(
                {
                    "operator": op.value,
                    "resolution": f"{w}x{h}",
                    "width": w,
                    "height": h,
                    **stats.to_dict(),
                }
            )

    return rows
