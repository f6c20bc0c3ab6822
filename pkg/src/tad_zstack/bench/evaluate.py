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
Benchmarks: Fast-search evaluation
==================================

Quality of the two-pass scan on synthetic scenes:

- accuracy (ACC): fraction of scenes in which the found segment overlaps the
  true focused segment
- precision (PPV) and recall (TPR) of the coverage frames computed on the
  segment, with the coverage of the full stack as reference; frames of the
  same duplicate group may differ by one
- speedup: frame-count reduction of the two-pass scan
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .. import defaults
from ..coverage import CoverageConfig, full_focus_coverage
from ..exception import EmptyCoverageError, InvalidPeakError, NoPeakError
from ..measure.operators import FMOperator
from ..peaks.search import fast_search
from ..simsynth.render import render_zstack
from ..simsynth.scene import SceneSpec, generate_scene

__all__ = ["SceneEvaluation", "FastSearchEvaluation", "evaluate_fast_search"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SceneEvaluation:
    """
    Evaluation of a single scene.
    """

    seed: int
    n_frames: int
    truth_segment: List[int]
    segment: Optional[List[int]]
    hit: bool
    reference: List[int]
    pruned: List[int]
    true_positives: int
    recalled: int
    speedup: float


@dataclass(frozen=True)
class FastSearchEvaluation:
    """
    Aggregated evaluation over a scene list.
    """

    acc: float
    ppv: float
    tpr: float
    speedup: float
    scenes: List[SceneEvaluation] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _matches(a: int, b: int, group: int) -> bool:
    return a == b or (abs(a - b) <= 1 and a // group == b // group)


def _coverage(stack: Any, cfg: CoverageConfig) -> List[int]:
    try:
        return full_focus_coverage(stack, cfg).selected
    except EmptyCoverageError:
        return []


def _evaluate_scene(
    spec: SceneSpec,
    coarse_stride: int,
    op: FMOperator,
    cfg: CoverageConfig,
) -> SceneEvaluation:
    truth = generate_scene(spec)
    full = render_zstack(truth, spec)
    coarse = full.subsample(coarse_stride)
    n = len(full)

    reference = _coverage(full, cfg)

    try:
        segment = fast_search(coarse, op=op)
    except (NoPeakError, InvalidPeakError) as e:
        logger.warning("Fast search failed on scene %d: %s", spec.seed, e)
        segment = None

    pruned: List[int] = []
    if segment is not None:
        hit = segment.overlaps(*truth.focused_segment)
        lo, hi = segment.start_z, min(segment.end_z, n - 1)
        pruned = [lo + i for i in _coverage(full.window(lo, hi), cfg)]
        speedup = n / (len(coarse) + segment.n_fine_frames)
    else:
        hit = False
        speedup = n / len(coarse)

    g = spec.group
    tp = sum(any(_matches(p, r, g) for r in reference) for p in pruned)
    recalled = sum(any(_matches(r, p, g) for p in pruned) for r in reference)

    return SceneEvaluation(
        seed=spec.seed,
        n_frames=n,
        truth_segment=list(truth.focused_segment),
        segment=[segment.start_z, segment.end_z] if segment is not None else None,
        hit=hit,
        reference=reference,
        pruned=pruned,
        true_positives=tp,
        recalled=recalled,
        speedup=speedup,
    )


def evaluate_fast_search(
    scenes: Sequence[SceneSpec],
    coarse_stride: int = defaults.COARSE_STRIDE,
    op: Union[str, FMOperator] = FMOperator.VOLL4,
    coverage: Optional[CoverageConfig] = None,
) -> FastSearchEvaluation:
    """
    Evaluate the two-pass scan on a list of scenes.

    Parameters
    ----------
    scenes : Sequence[SceneSpec]
        Scenes, e.g. `scene_suite("fast_search", 50)`.
    coarse_stride : int, optional
        Z-step of the coarse pass. Defaults to `8`.
    op : str | FMOperator, optional
        Focus-measure operator of the search. Defaults to VOLL4.
    coverage : Optional[CoverageConfig], optional
        Coverage configuration. Defaults to `CoverageConfig()`.

    Returns
    -------
    FastSearchEvaluation
        ACC, PPV, TPR (pooled over all scenes) and mean speedup.
    """
    if len(scenes) == 0:
        raise ValueError("Evaluation needs at least one scene.")
    if coarse_stride < 1:
        raise ValueError(f"Coarse stride must be positive, got {coarse_stride}.")

    operator = FMOperator.parse(op)
    cfg = coverage if coverage is not None else CoverageConfig()

    rows = [_evaluate_scene(s, coarse_stride, operator, cfg) for s in scenes]

    n_pruned = sum(len(r.pruned) for r in rows)
    n_reference = sum(len(r.reference) for r in rows)

    result = FastSearchEvaluation(
        acc=float(np.mean([r.hit for r in rows])),
        ppv=sum(r.true_positives for r in rows) / n_pruned if n_pruned else 0.0,
        tpr=sum(r.recalled for r in rows) / n_reference if n_reference else 0.0,
        speedup=float(np.mean([r.speedup for r in rows])),
        scenes=rows,
    )
    logger.info(
        "Fast search on %d scenes: ACC %.2f, PPV %.2f, TPR %.2f, speedup %.2f.",
        len(rows),
        result.acc,
        result.ppv,
        result.tpr,
        result.speedup,
    )
    return result
