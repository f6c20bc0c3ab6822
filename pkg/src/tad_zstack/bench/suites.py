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
Benchmarks: Suites
==================

Named benchmark suites reported by ``tad-zstack bench <suite>``. Every suite
returns a JSON-compatible dictionary.
"""
from __future__ import annotations

import inspect
import logging
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import torch
from tad_mctc import storch

from .. import defaults
from ..coverage import (
    CoverageConfig,
    SelectionMethod,
    drop_blurred,
    drop_duplicates,
    select_best3,
    select_parts,
)
from ..imgcore.frame import ZStack
from ..measure.curve import focal_curve
from ..measure.operators import fm_teng
from ..simsynth.render import render_zstack
from ..simsynth.scene import generate_scene
from ..simsynth.suite import scene_suite
from ..stacking import StackMethod, stack_frames
from .evaluate import evaluate_fast_search
from .operators import RESOLUTIONS, bench_operators, parse_resolution, random_frames
from .scan import scan_suite
from .timing import time_callable

__all__ = [
    "SUITES",
    "run_suite",
    "coverage_suite",
    "filters_suite",
    "stacking_suite",
    "stacking_quality",
]

logger = logging.getLogger(__name__)

Resolution = Union[str, Tuple[int, int]]


def _sizes(resolutions: Sequence[Resolution]) -> List[Tuple[int, int]]:
    return [
        parse_resolution(r) if isinstance(r, str) else (int(r[0]), int(r[1]))
        for r in resolutions
    ]


def _row(stats: Any, **keys: Any) -> Dict[str, Any]:
    return {**keys, **stats.to_dict()}


def coverage_suite(
    resolutions: Sequence[Resolution] = RESOLUTIONS,
    repeats: int = defaults.BENCH_REPEATS,
    n_frames: int = 5,
    seed: int = 0,
) -> Dict[str, Any]:
    """
    Runtime of the Parts and Best3 selections on random stacks.
    """
    rows = []
    for w, h in _sizes(resolutions):
        stack = ZStack(random_frames(w, h, n_frames, seed))
        for method, select in (
            (SelectionMethod.PARTS, select_parts),
            (SelectionMethod.BEST3, select_best3),
        ):
            cfg = CoverageConfig(method=method)
            stats = time_callable(partial(select, stack, cfg), repeats=repeats)
            rows.append(_row(stats, method=method.value, resolution=f"{w}x{h}"))

    return {"suite": "coverage", "n_frames": n_frames, "rows": rows}


def filters_suite(
    resolutions: Sequence[Resolution] = ((640, 480),),
    sizes: Sequence[int] = (2, 3, 4, 5),
    repeats: int = defaults.BENCH_REPEATS,
    seed: int = 0,
) -> Dict[str, Any]:
    """
    Runtime of the blur and duplicate filters per stack size.
    """
    cfg = CoverageConfig()

    def run(stack: ZStack) -> List[int]:
        idx = list(range(len(stack)))
        curve = focal_curve(stack, cfg.operator)
        idx = drop_blurred(stack, idx, curve, cfg)
        return drop_duplicates(stack, idx, cfg, curve=curve)

    rows = []
    for w, h in _sizes(resolutions):
        for n in sizes:
            stack = ZStack(random_frames(w, h, n, seed))
            stats = time_callable(partial(run, stack), repeats=repeats)
            rows.append(_row(stats, n_frames=n, resolution=f"{w}x{h}"))

    return {"suite": "filters", "rows": rows}


def stacking_quality(
    count: int = 30, seed: int = 0, width: int = 512, height: int = 384
) -> Dict[str, Any]:
    """
    Fusion quality on two-plane scenes.

    The frames at the sharpest position of every plane are fused. Reported
    per method are the mean RMSE to the all-in-focus truth and the mean
    ratio of the fused TENG to the best input TENG. The best input RMSE is
    reported for comparison.

    Raises
    ------
    ValueError
        If `count` is not positive.
    """
    if count < 1:
        raise ValueError(f"Need at least one scene, got {count}.")

    methods = list(StackMethod)
    rmse: Dict[str, List[float]] = {m.value: [] for m in methods}
    ratio: Dict[str, List[float]] = {m.value: [] for m in methods}
    inputs: List[float] = []

    for spec in scene_suite("stacking", count, seed, width, height):
        truth = generate_scene(spec)
        stack = render_zstack(truth, spec).subset(truth.plane_best)
        aif = truth.all_in_focus

        errors = torch.sqrt(torch.mean((stack.frames - aif) ** 2, dim=(-2, -1)))
        inputs.append(float(errors.min()))
        best_teng = fm_teng(stack.frames).max()

        for m in methods:
            fused = stack_frames(stack, m).image
            rmse[m.value].append(float(torch.sqrt(torch.mean((fused - aif) ** 2))))
            ratio[m.value].append(float(storch.divide(fm_teng(fused), best_teng)))

    return {
        "scenes": count,
        "resolution": f"{width}x{height}",
        "input_rmse": float(np.mean(inputs)),
        "rmse": {k: float(np.mean(v)) for k, v in rmse.items()},
        "teng_ratio": {k: float(np.mean(v)) for k, v in ratio.items()},
        "min_teng_ratio": {k: float(np.min(v)) for k, v in ratio.items()},
    }


def stacking_suite(
    resolutions: Sequence[Resolution] = ((1024, 768),),
    sizes: Sequence[int] = (3,),
    repeats: int = defaults.BENCH_REPEATS,
    count: int = 30,
    seed: int = 0,
) -> Dict[str, Any]:
    """
    Runtime of every stacking method per stack size and resolution, and
    their fusion quality on a scene suite.
    """
    rows = []
    for w, h in _sizes(resolutions):
        for n in sizes:
            stack = ZStack(random_frames(w, h, n, seed))
            for m in StackMethod:
                fuse = partial(stack_frames, stack, m)
                stats = time_callable(fuse, repeats=repeats)
                rows.append(
                    _row(stats, method=m.value, n_frames=n, resolution=f"{w}x{h}")
                )

    return {
        "suite": "stacking",
        "rows": rows,
        "quality": stacking_quality(count, seed) if count > 0 else None,
    }


def _operators(
    resolutions: Sequence[Resolution] = RESOLUTIONS,
    repeats: int = defaults.BENCH_REPEATS,
    seed: int = 0,
) -> Dict[str, Any]:
    rows = bench_operators(resolutions, repeats=repeats, seed=seed)
    return {"suite": "operators", "rows": rows}


def _scan(
    count: int = 30, seed: int = 0, stride: int = defaults.COARSE_STRIDE
) -> Dict[str, Any]:
    return {"suite": "scan", **scan_suite(scene_suite("scan", count, seed), stride)}


def _fast_search(
    count: int = 50, seed: int = 0, stride: int = defaults.COARSE_STRIDE
) -> Dict[str, Any]:
    result = evaluate_fast_search(scene_suite("fast_search", count, seed), stride)
    return {"suite": "fast-search", "coarse_stride": stride, **result.to_dict()}


SUITES: Dict[str, Callable[..., Dict[str, Any]]] = {
    "operators": _operators,
    "scan": _scan,
    "fast-search": _fast_search,
    "coverage": coverage_suite,
    "filters": filters_suite,
    "stacking": stacking_suite,
}
"""Benchmark suites by name."""


def run_suite(name: str, threads: Optional[int] = 1, **options: Any) -> Dict[str, Any]:
    """
    Run a benchmark suite.

    Parameters
    ----------
    name : str
        Suite name, see :data:`SUITES`.
    threads : Optional[int], optional
        Torch intra-op threads during the run. Defaults to `1` for stable
        timings; `None` keeps the current setting.
    **options : Any
        Suite options. Options a suite does not take are ignored.

    Returns
    -------
    Dict[str, Any]
        Suite results.
    """
    if name not in SUITES:
        raise ValueError(f"Unknown suite '{name}', choose from: {', '.join(SUITES)}.")

    suite = SUITES[name]
    accepted = inspect.signature(suite).parameters
    kwargs = {k: v for k, v in options.items() if k in accepted and v is not None}

    previous = torch.get_num_threads()
    if threads is not None:
        torch.set_num_threads(threads)
    try:
        logger.info(
            "Running suite '%s' with %d thread(s).", name, torch.get_num_threads()
        )
        result = suite(**kwargs)
    finally:
        torch.set_num_threads(previous)

    return {**result, "threads": threads if threads is not None else previous}
