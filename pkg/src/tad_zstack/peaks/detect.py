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
Peak search: Detection
======================

Local maxima and their topographic prominence.

A local maximum is a sample strictly greater than both neighbors; a plateau of
equal values counts as one peak at its center (rounding left). The prominence
is the height above the higher of the two minima found when descending to the
left and to the right until a strictly higher sample or the curve end. Maxima
and prominences are taken from :mod:`scipy.signal`, which implements exactly
these definitions.

The bases of a peak are the nearest samples on each side at or below the level
`height - rel_height * prominence`. With `rel_height = 1` (default) this is the
full-base width.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import torch
from scipy import signal

from .. import defaults
from ..exception import NoPeakError
from ..measure.curve import FocalCurve
from ..typing import Tensor

__all__ = [
    "Peak",
    "find_peaks",
    "bin_search_prominent_peak",
    "rank_peaks",
    "merge_peaks",
]


CurveLike = Union[FocalCurve, Tensor, np.ndarray, Sequence[float]]


@dataclass(frozen=True)
class Peak:
    """
    Prominence peak of a focal curve.
    """

    index: int
    """Sample position in the (extended) curve."""

    height: float
    """Curve value at the peak."""

    prominence: float
    """Topographic prominence."""

    left_base: int
    """Left base position."""

    right_base: int
    """Right base position."""

    @property
    def width(self) -> int:
        """Distance between the bases in samples."""
        return self.right_base - self.left_base

    def to_dict(self) -> dict:
        """JSON-compatible representation including the width."""
        return {**asdict(self), "width": self.width}


def _as_array(curve: CurveLike) -> np.ndarray:
    if isinstance(curve, FocalCurve):
        return curve.numpy()
    if isinstance(curve, Tensor):
        return curve.detach().cpu().numpy().astype(np.float64)
    return np.asarray(curve, dtype=np.float64)


def _window(curve: CurveLike) -> Optional[Tuple[int, int]]:
    """Index range of the unmirrored samples within the curve."""
    if isinstance(curve, FocalCurve):
        return curve.mirror_offset, curve.mirror_offset + curve.n_source
    return None


def find_peaks(
    curve: CurveLike, min_prominence: float = 0.0, rel_height: float = 1.0
) -> List[Peak]:
    """
    Find all local maxima with a prominence of at least `min_prominence`.

    Parameters
    ----------
    curve : FocalCurve | Tensor | np.ndarray
        Curve with at least three samples.
    min_prominence : float, optional
        Prominence threshold. Defaults to `0.0`.
    rel_height : float, optional
        Base level as fraction of the prominence below the peak, in (0, 1].
        Defaults to `1.0` (full base).

    Returns
    -------
    List[Peak]
        Peaks sorted by index.

    Raises
    ------
    ValueError
        If the curve is shorter than three samples or `rel_height` is invalid.

    Example
    -------
    >>> [(p.index, p.prominence) for p in find_peaks([0, 1, 0, 3, 0, 2, 0])]
    [(1, 1.0), (3, 3.0), (5, 2.0)]
    """
    x = _as_array(curve)
    if x.ndim != 1 or x.size < 3:
        raise ValueError(
            f"Peak search needs at least three samples, got {x.size}."
        )
    if not 0.0 < rel_height <= 1.0:
        raise ValueError(
            f"Relative base height must lie in (0, 1], got {rel_height}."
        )
    if min_prominence < 0.0:
        raise ValueError(
            f"Prominence threshold must be non-negative, got {min_prominence}."
        )

    indices, _ = signal.find_peaks(x)
    if indices.size == 0:
        return []

    prominences, lmins, rmins = signal.peak_prominences(x, indices)

    peaks = []
    for p, prom, lmin, rmin in zip(indices, prominences, lmins, rmins):
        if prom < min_prominence:
            continue

        # reference level of the higher saddle, exact for rel_height = 1
        ref = max(x[lmin], x[rmin])
        level = ref + (1.0 - rel_height) * prom

        left = p
        while left > lmin and x[left] > level:
            left -= 1

        right = p
        while right < rmin and x[right] > level:
            right += 1

        peaks.append(
            Peak(
                index=int(p),
                height=float(x[p]),
                prominence=float(prom),
                left_base=int(left),
                right_base=int(right),
            )
        )

    return peaks


def rank_peaks(
    peaks: Sequence[Peak], window: Optional[Tuple[int, int]] = None
) -> List[Peak]:
    """
    Order peaks by decreasing prominence.

    Ties prefer peaks inside `window` (the unmirrored range of an extended
    curve), then the lower index.
    """

    def key(p: Peak) -> Tuple[float, int, int]:
        inside = window is None or window[0] <= p.index < window[1]
        return (-p.prominence, 0 if inside else 1, p.index)

    return sorted(peaks, key=key)


def bin_search_prominent_peak(curve: CurveLike, rel_height: float = 1.0) -> Peak:
    """
    Binary search for the prominence threshold that leaves a single peak.

    The threshold is bisected in `[0, max - min]` until exactly one peak
    survives, for at most 64 iterations or until the interval is narrower than
    `1e-12 * (max - min)`. If no threshold isolates a single peak (equal
    prominences), the most prominent survivor is returned; ties prefer
    samples inside the unmirrored range, then the lower index.

    Parameters
    ----------
    curve : FocalCurve | Tensor | np.ndarray
        Preprocessed (smoothed and mirrored) curve.
    rel_height : float, optional
        Base level passed to :func:`find_peaks`. Defaults to `1.0`.

    Returns
    -------
    Peak
        The globally most prominent peak.

    Raises
    ------
    NoPeakError
        If the curve is flat or has no local maximum.
    """
    x = _as_array(curve)
    span = float(np.max(x) - np.min(x))
    scale = float(max(abs(np.max(x)), abs(np.min(x))))
    if span <= defaults.FLAT_RTOL * scale or span == 0.0:
        raise NoPeakError("Focal curve is flat, no peak can be found.")

    peaks = find_peaks(curve, 0.0, rel_height)
    if len(peaks) == 0:
        raise NoPeakError("Focal curve has no local maximum.")

    # filtering the full peak list equals re-running find_peaks(curve, mid)
    survivors = peaks
    lo, hi = 0.0, span
    for _ in range(defaults.BIN_SEARCH_MAXITER):
        if len(survivors) == 1 or hi - lo < defaults.BIN_SEARCH_RTOL * span:
            break

        mid = 0.5 * (lo + hi)
        found = [p for p in peaks if p.prominence >= mid]
        if len(found) >= 1:
            lo, survivors = mid, found
        else:
            hi = mid

    return rank_peaks(survivors, _window(curve))[0]


def merge_peaks(
    winner: Peak,
    peaks: List[Peak],
    window: Tuple[int, int],
    ratio: float = defaults.SEGMENT_MERGE_RATIO,
) -> Tuple[Peak, int]:
    """
    Widen the bases of the winner over every other peak inside `window` whose
    prominence reaches `ratio` times the winner's prominence.

    Specimens with several focused planes produce one peak per plane. Bases
    at a fraction of the prominence stop in the valley between two planes, so
    the weaker planes are added explicitly.

    Parameters
    ----------
    winner : Peak
        Most prominent peak.
    peaks : List[Peak]
        All peaks of the curve, found at the same base level as the winner.
    window : Tuple[int, int]
        Index range of the unmirrored samples.
    ratio : float, optional
        Prominence fraction of the winner. Defaults to `0.1`.

    Returns
    -------
    Tuple[Peak, int]
        Winner with widened bases and the number of merged peaks.

    Example
    -------
    >>> peaks = find_peaks([0, 4, 0, 0, 9, 0, 0.2, 0], rel_height=0.5)
    >>> peak, n = merge_peaks(peaks[1], peaks, (0, 8))
    >>> peak.left_base, peak.right_base, n
    (0, 5, 1)
    """
    limit = ratio * winner.prominence
    merged = [
        p
        for p in peaks
        if p.index != winner.index
        and window[0] <= p.index < window[1]
        and p.prominence >= limit
    ]
    if len(merged) == 0:
        return winner, 0

    left = min([winner.left_base] + [p.left_base for p in merged])
    right = max([winner.right_base] + [p.right_base for p in merged])
    return replace(winner, left_base=left, right_base=right), len(merged)
