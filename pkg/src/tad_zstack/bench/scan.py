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
Benchmarks: Scan strategy
=========================

Frame-count model of the two-pass scan. A full slow scan records every frame
of the stack. The two-pass scan records every `coarse_stride`-th frame, finds
the focused segment on these frames, and rescans the segment with unit step.
The ratio of both frame counts is the reduction of the two-pass scan.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, Sequence, Union

import numpy as np

from .. import defaults
from ..measure.operators import FMOperator
from ..peaks.search import fast_search
from ..simsynth.render import render_zstack
from ..simsynth.scene import SceneSpec, generate_scene

__all__ = ["bench_scan_strategy", "scan_suite"]

logger = logging.getLogger(__name__)


def bench_scan_strategy(
    spec: SceneSpec,
    coarse_stride: int = defaults.COARSE_STRIDE,
    op: Union[str, FMOperator] = FMOperator.VOLL4,
) -> Dict[str, Any]:
    """
    Count the frames of a full slow scan and of the two-pass scan.

    Only the coarse frames are rendered. A stride of `1` is allowed and
    gives a reduction below one, since the coarse pass already is the full
    scan.

    Parameters
    ----------
    spec : SceneSpec
        Scene to scan.
    coarse_stride : int, optional
        Z-step of the coarse pass. Defaults to `8`.
    op : str | FMOperator, optional
        Focus-measure operator of the search. Defaults to VOLL4.

    Returns
    -------
    Dict[str, Any]
        `frames_full_slow`, `frames_two_pass`, `reduction`, the found
        `segment` and whether it overlaps the true focused segment (`hit`).
    """
    if coarse_stride < 1:
        raise ValueError(f"Coarse stride must be positive, got {coarse_stride}.")

    truth = generate_scene(spec)
    coarse = render_zstack(truth, spec, stride=coarse_stride)
    segment = fast_search(coarse, op=op)

    n = spec.n_output
    two_pass = len(coarse) + segment.n_fine_frames

    return {
        "frames_full_slow": n,
        "frames_two_pass": two_pass,
        "reduction": n / two_pass,
        "segment": [segment.start_z, segment.end_z],
        "hit": segment.overlaps(*truth.focused_segment),
    }


def scan_suite(
    specs: Sequence[SceneSpec], coarse_stride: int = defaults.COARSE_STRIDE
) -> Dict[str, Any]:
    """
    Scan strategy over a list of scenes with the mean reduction.
    """
    rows = [bench_scan_strategy(spec, coarse_stride) for spec in specs]
    reductions = np.array([r["reduction"] for r in rows], dtype=np.float64)

    mean = float(reductions.mean()) if rows else 0.0
    logger.info("Mean reduction over %d scenes: %.2f.", len(rows), mean)

    return {
        "coarse_stride": coarse_stride,
        "scenes": rows,
        "mean_reduction": mean,
        "min_reduction": float(reductions.min()) if rows else 0.0,
    }
