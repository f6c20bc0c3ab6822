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
Peak search: Fast search
========================

Mapping of the most prominent peak back onto the stack and the complete fast
search of the focused segment.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, replace
from typing import Optional, Tuple, Union

from .. import defaults
from ..exception import InvalidPeakError
from ..imgcore.frame import ZStack
from ..imgcore.ops import downscale
from ..measure.curve import FocalCurve, focal_curve
from ..measure.operators import FMOperator
from .detect import (
    Peak,
    bin_search_prominent_peak,
    find_peaks,
    merge_peaks,
    rank_peaks,
)
from .preprocess import default_smooth_window, mirror_extend, smoothen

__all__ = ["Segment", "map_back", "fast_search"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Segment:
    """
    Interval of stack frames that contains the focused area.
    """

    start_frame: int
    """First frame index (inclusive) of the searched stack."""

    end_frame: int
    """Last frame index (inclusive) of the searched stack."""

    start_z: int
    """Position of the first frame in motor steps."""

    end_z: int
    """Position of the last frame in motor steps."""

    stride: int = 1
    """Z-step of the searched stack."""

    peak_frame: int = -1
    """Frame index of the winning peak (clamped to the stack)."""

    prominence: float = 0.0
    """Prominence of the winning peak."""

    runner_up_ratio: float = 0.0
    """Prominence of the second best peak relative to the winner."""

    ambiguous: bool = False
    """Whether the runner-up exceeds 80% of the winner's prominence."""

    degenerate: bool = False
    """Whether clamping collapsed the segment to a single frame."""

    merged: int = 0
    """Number of further peaks merged into the segment."""

    def __post_init__(self) -> None:
        if not 0 <= self.start_frame <= self.end_frame:
            raise ValueError(
                f"Invalid segment [{self.start_frame}, {self.end_frame}]."
            )

    @property
    def n_frames(self) -> int:
        """Number of frames of the searched stack inside the segment."""
        return self.end_frame - self.start_frame + 1

    @property
    def n_fine_frames(self) -> int:
        """Number of unit z-steps covered, i.e., frames of a fine rescan."""
        return self.end_z - self.start_z + 1

    def fine_range(self) -> range:
        """Fine-scan frame indices covered by the segment."""
        return range(self.start_z, self.end_z + 1)

    def contains(self, start: int, end: int) -> bool:
        """Whether the fine-scan interval `[start, end]` lies inside."""
        return self.start_z <= start and end <= self.end_z

    def overlaps(self, start: int, end: int) -> bool:
        """Whether the fine-scan interval `[start, end]` intersects."""
        return self.start_z <= end and start <= self.end_z

    def to_dict(self) -> dict:
        """JSON-compatible representation."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> Segment:
        """Inverse of :meth:`to_dict`."""
        return cls(**data)


def _clamp(value: int, lo: int, hi: int) -> int:
    return max(lo, min(hi, value))


def map_back(peak: Peak, curve: FocalCurve) -> Segment:
    """
    Map a peak of a (mirrored) curve back to a segment of the original stack.

    The bases are shifted by the mirror offset and clamped to the stack. Frame
    positions in motor steps are the indices multiplied by the stride.

    Parameters
    ----------
    peak : Peak
        Peak found on `curve`.
    curve : FocalCurve
        The curve the peak was detected on.

    Returns
    -------
    Segment
        Frames `[start, end]` of the original stack.

    Raises
    ------
    InvalidPeakError
        If the peak lies entirely inside a mirrored extension, i.e., both
        bases map outside the stack.

    Example
    -------
    >>> import torch
    >>> from tad_zstack.measure import FocalCurve
    >>> curve = FocalCurve(torch.zeros(8), source_stride=10, mirror_offset=2,
    ...                    source_length=4)
    >>> seg = map_back(Peak(4, 1.0, 1.0, 3, 6), curve)
    >>> print(seg.start_frame, seg.end_frame, seg.start_z, seg.end_z)
    1 3 10 30
    """
    n = curve.n_source
    off = curve.mirror_offset

    lo = peak.left_base - off
    hi = peak.right_base - off
    if hi < 0 or lo >= n:
        raise InvalidPeakError(
            f"Peak at sample {peak.index} with bases ({peak.left_base}, "
            f"{peak.right_base}) lies inside the mirrored extension."
        )

    start = _clamp(lo, 0, n - 1)
    end = _clamp(hi, 0, n - 1)
    degenerate = start == end and (lo != start or hi != end)
    if degenerate:
        logger.warning(
            "Peak bases (%d, %d) collapse to the single frame %d after "
            "clamping.",
            peak.left_base,
            peak.right_base,
            start,
        )

    stride = curve.source_stride
    return Segment(
        start_frame=start,
        end_frame=end,
        start_z=start * stride,
        end_z=end * stride,
        stride=stride,
        peak_frame=_clamp(peak.index - off, 0, n - 1),
        prominence=peak.prominence,
        degenerate=degenerate,
    )


def _runner_up(peaks: list, winner: Peak, window: Tuple[int, int]) -> float:
    """Prominence of the best other peak inside `window` over the winner's."""
    others = [
        p
        for p in rank_peaks(peaks, window)
        if p.index != winner.index and window[0] <= p.index < window[1]
    ]
    if not others or winner.prominence <= 0.0:
        return 0.0
    return others[0].prominence / winner.prominence


def fast_search(
    stack: ZStack,
    op: Union[str, FMOperator] = FMOperator.VOLL4,
    smooth_window: Optional[int] = None,
    rel_height: float = defaults.SEGMENT_REL_HEIGHT,
    downscale_to: Optional[Tuple[int, int]] = None,
    merge_ratio: float = defaults.SEGMENT_MERGE_RATIO,
) -> Segment:
    """
    Find the focused segment of a (coarse) stack.

    The focal curve is smoothed, mirrored and searched for its most prominent
    peak, which is mapped back to the stack. Further peaks with at least
    `merge_ratio` of the winner's prominence (other focused planes of the
    specimen) are merged into the segment.

    Parameters
    ----------
    stack : ZStack
        Coarse scan with at least three frames.
    op : str | FMOperator, optional
        Focus-measure operator. Defaults to VOLL4.
    smooth_window : Optional[int], optional
        Odd smoothing window. Defaults to `max(3, round(n/20))` made odd.
    rel_height : float, optional
        Level of the segment bases as fraction of the prominence below the
        peak. Defaults to `0.8`; `1.0` gives the full-base width.
    downscale_to : Optional[Tuple[int, int]], optional
        Evaluate the curve on frames downscaled to `(width, height)`.
    merge_ratio : float, optional
        Prominence fraction of the winner above which further peaks join the
        segment. Defaults to `0.1`.

    Returns
    -------
    Segment
        Focused segment. `ambiguous` is set if a second peak reaches more
        than 80% of the winner's prominence, `merged` counts the peaks
        merged into the segment.
    """
    if len(stack) < 3:
        raise ValueError(
            f"Fast search needs at least three frames, got {len(stack)}."
        )

    if downscale_to is not None:
        small = downscale(stack.frames, downscale_to[0], downscale_to[1])
        stack = ZStack(small, stride=stack.stride)

    curve = focal_curve(stack, op)
    window = smooth_window
    if window is None:
        window = default_smooth_window(len(curve))
    extended = mirror_extend(smoothen(curve, window))

    peak = bin_search_prominent_peak(extended, rel_height=rel_height)
    peaks = find_peaks(extended, 0.0, rel_height)

    off = extended.mirror_offset
    window_range = (off, off + extended.n_source)
    widened, merged = merge_peaks(peak, peaks, window_range, merge_ratio)
    segment = map_back(widened, extended)
    if merged > 0:
        logger.info("Merged %d further peak(s) into the focused segment.", merged)

    ratio = _runner_up(peaks, peak, window_range)
    ambiguous = ratio > defaults.RUNNER_UP_RATIO
    if ambiguous:
        logger.warning(
            "Runner-up peak reaches %.0f%% of the winner's prominence, the "
            "specimen may span several focused regions.",
            100.0 * ratio,
        )

    logger.info(
        "Focused segment: frames %d-%d (z %d-%d) of %d.",
        segment.start_frame,
        segment.end_frame,
        segment.start_z,
        segment.end_z,
        len(stack),
    )
    return replace(
        segment, runner_up_ratio=ratio, ambiguous=ambiguous, merged=merged
    )
