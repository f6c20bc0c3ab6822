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
Coverage: Filters
=================

Filters applied to the selected candidates, in this order:

1. :func:`drop_blurred`: frames far below the sharpest frame of the stack
2. :func:`drop_dirt`: frames under small focal-curve peaks far from the
   main peak (dust or condensate in the optical path)
3. :func:`drop_duplicates`: near-identical frames, the sharper one is kept

Every filter takes an optional `audit` dictionary that maps frame indices to
the reason they were dropped.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import torch

from ..exception import DimensionMismatchError
from ..imgcore.frame import ZStack
from ..imgcore.ops import frame_diff_mad
from ..measure.curve import FocalCurve
from ..measure.operators import get_operator
from ..peaks.detect import Peak, find_peaks, rank_peaks
from ..peaks.preprocess import mirror_extend
from ..typing import Tensor
from .config import CoverageConfig

__all__ = [
    "drop_blurred",
    "drop_dirt",
    "drop_duplicates",
    "main_peak_span",
    "Audit",
]

logger = logging.getLogger(__name__)


Audit = Dict[int, str]
"""Drop reasons by frame index."""


def _values(curve: Union[FocalCurve, Tensor, Sequence[float]]) -> Tensor:
    if isinstance(curve, FocalCurve):
        return curve.values
    if isinstance(curve, Tensor):
        return curve
    return torch.tensor(curve, dtype=torch.double)


def drop_blurred(
    stack: ZStack,
    indices: Sequence[int],
    curve: Union[FocalCurve, Tensor, Sequence[float]],
    cfg: CoverageConfig,
    audit: Optional[Audit] = None,
) -> List[int]:
    """
    Drop completely blurred frames.

    A frame `k` is blurred if `curve[k] < blur_ratio * max(curve)`.

    Parameters
    ----------
    stack : ZStack
        Stack of the candidates.
    indices : Sequence[int]
        Candidate frames.
    curve : FocalCurve | Tensor
        Whole-frame focus measures of all frames of the stack.
    cfg : CoverageConfig
        Coverage configuration.
    audit : Optional[Audit], optional
        Receives `"blurred"` for every dropped frame.

    Returns
    -------
    List[int]
        Remaining candidates in the given order.

    Raises
    ------
    DimensionMismatchError
        If the curve length differs from the stack length.

    Example
    -------
    >>> import torch
    >>> stack = ZStack(torch.full((3, 3, 3), 0.5, dtype=torch.double))
    >>> drop_blurred(stack, [0, 1, 2], [10.0, 1.0, 9.0], CoverageConfig())
    [0, 2]
    """
    values = _values(curve)
    if values.numel() != len(stack):
        raise DimensionMismatchError(
            f"Focal curve has {values.numel()} samples for {len(stack)} frames."
        )
    limit = cfg.blur_ratio * float(values.max())

    kept = []
    for k in indices:
        if float(values[k]) < limit:
            logger.debug("Frame %d dropped as blurred.", k)
            if audit is not None:
                audit[k] = "blurred"
        else:
            kept.append(k)
    return kept


def main_peak_span(
    values: Tensor, index: int, window: Tuple[int, int]
) -> Tuple[int, int]:
    """
    Full-base span of the main peak, restricted to the original samples.

    The reference level is the higher of the curve minima left and right of
    the peak within `window`; a side without samples is ignored. The bases
    are the nearest samples at or below that level, or the window ends.
    Mirror copies of the peak are never crossed, so peaks close to the
    stack ends keep a finite span.

    Parameters
    ----------
    values : Tensor
        Samples of the (extended) curve.
    index : int
        Position of the main peak.
    window : Tuple[int, int]
        Index range of the original samples.

    Returns
    -------
    Tuple[int, int]
        Left and right base.

    Example
    -------
    >>> import torch
    >>> x = torch.tensor([1.0, 3.0, 2.0, 5.0, 9.0, 4.0, 0.5, 1.0])
    >>> main_peak_span(x, 4, (0, 8))
    (0, 6)
    """
    lo, hi = window
    x = values.detach().cpu().tolist()

    sides = [x[lo:index], x[index + 1 : hi]]
    minima = [min(side) for side in sides if len(side) > 0]
    if len(minima) == 0:
        return index, index
    level = max(minima)

    left = index
    while left > lo and x[left] > level:
        left -= 1

    right = index
    while right < hi - 1 and x[right] > level:
        right += 1

    return left, right


def drop_dirt(
    curve: FocalCurve,
    indices: Sequence[int],
    cfg: CoverageConfig,
    audit: Optional[Audit] = None,
) -> List[int]:
    """
    Drop frames under dirt peaks of the focal curve.

    The curve is mirror-extended so that peaks at the stack ends have a
    prominence. Only peaks inside the original range are considered. With the
    main peak `P` (largest prominence), a peak `Q` is a dirt peak if

    - `prominence(Q) < dirt_prom_ratio * prominence(P)` and
    - `|index(Q) - index(P)| > dirt_dist_ratio * width(P)`.

    The width of `P` is its full-base width on the original samples, see
    :func:`main_peak_span`. Further focused planes of the specimen rise from
    the flanks of `P` and lie inside this span, so they are never dirt. Peak
    spans use bases at `dirt_rel_height` of the prominence. A frame lies
    under `Q` if it is strictly between the bases of `Q`. Frames under the
    main peak or under any other peak that is no dirt peak are never dropped.

    Parameters
    ----------
    curve : FocalCurve
        Unmirrored whole-frame focal curve of the stack.
    indices : Sequence[int]
        Candidate frames.
    cfg : CoverageConfig
        Coverage configuration.
    audit : Optional[Audit], optional
        Receives `"dirt"` for every dropped frame.

    Returns
    -------
    List[int]
        Remaining candidates in the given order. Unchanged if the curve has no
        peak.

    Example
    -------
    >>> import torch
    >>> curve = FocalCurve(torch.tensor([0, 1, 0, 0, 0, 0, 8, 0.0]))
    >>> drop_dirt(curve, list(range(8)), CoverageConfig())
    [0, 2, 3, 4, 5, 6, 7]
    """
    if not isinstance(curve, FocalCurve):
        curve = FocalCurve(_values(curve))
    if curve.n_source < 2:
        return list(indices)

    ext = curve if curve.is_mirrored else mirror_extend(curve)
    lo, hi = ext.mirror_offset, ext.mirror_offset + ext.n_source

    peaks = [
        p
        for p in find_peaks(ext, 0.0, cfg.dirt_rel_height)
        if lo <= p.index < hi
    ]
    if len(peaks) == 0:
        return list(indices)

    main = rank_peaks(peaks, (lo, hi))[0]
    left, right = main_peak_span(ext.values, main.index, (lo, hi))
    width = right - left

    def is_dirt(q: Peak) -> bool:
        return (
            q is not main
            and q.prominence < cfg.dirt_prom_ratio * main.prominence
            and abs(q.index - main.index) > cfg.dirt_dist_ratio * width
        )

    protected: Set[int] = set()
    dirt: Set[int] = set()
    for q in peaks:
        span = range(q.left_base + 1, q.right_base)
        (dirt if is_dirt(q) else protected).update(span)

    tainted = {i - lo for i in dirt - protected if lo <= i < hi}

    kept = []
    for k in indices:
        if k in tainted:
            logger.debug("Frame %d dropped as dirt.", k)
            if audit is not None:
                audit[k] = "dirt"
        else:
            kept.append(k)
    return kept


def drop_duplicates(
    stack: ZStack,
    indices: Sequence[int],
    cfg: CoverageConfig,
    curve: Optional[Union[FocalCurve, Tensor]] = None,
    audit: Optional[Audit] = None,
) -> List[int]:
    """
    Drop near-identical frames.

    Candidates are scanned in index order. A candidate whose mean absolute
    difference to one or more kept frames is at most `dup_mad_threshold`
    replaces all of them if its whole-frame focus measure is strictly higher
    than theirs. Otherwise it is dropped as duplicate of the sharpest of them
    (ties to the lower index).

    Parameters
    ----------
    stack : ZStack
        Stack of the candidates.
    indices : Sequence[int]
        Sorted candidate frames.
    cfg : CoverageConfig
        Coverage configuration.
    curve : Optional[FocalCurve | Tensor], optional
        Whole-frame focus measures of the stack. Computed with `cfg.operator`
        if not given.
    audit : Optional[Audit], optional
        Receives `"dup_of:k"` for every dropped frame.

    Returns
    -------
    List[int]
        Sorted remaining candidates.
    """
    indices = [int(i) for i in indices]
    if len(indices) < 2:
        return indices

    if curve is None:
        fm = get_operator(cfg.operator)(stack.frames[indices])
        values = dict(zip(indices, fm.tolist()))
    else:
        v = _values(curve)
        values = {k: float(v[k]) for k in indices}

    kept: List[int] = []
    drops: Audit = {}
    for j in indices:
        if len(kept) > 0:
            mad = frame_diff_mad(stack.frames[kept], stack.frames[j])
            thr = cfg.dup_mad_threshold
            close = [k for k, m in zip(kept, mad.tolist()) if m <= thr]
        else:
            close = []

        if len(close) == 0:
            kept.append(j)
            continue

        best = max(close, key=lambda k: (values[k], -k))
        if values[j] > values[best]:
            for k in close:
                kept.remove(k)
                drops[k] = f"dup_of:{j}"
            # frames dropped earlier follow their replaced frame
            for k, reason in drops.items():
                if reason.startswith("dup_of:") and int(reason[7:]) in close:
                    drops[k] = f"dup_of:{j}"
            kept.append(j)
        else:
            drops[j] = f"dup_of:{best}"

    for k, reason in sorted(drops.items()):
        logger.debug("Frame %d dropped as %s.", k, reason)
    if audit is not None:
        audit.update(drops)

    return sorted(kept)
