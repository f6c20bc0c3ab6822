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
Benchmarks: Timing
==================

Wall-clock statistics of repeated calls. Runtimes are summarized by their
median with a 95% confidence interval from the normal approximation of the
sample median, i.e., half-width :math:`z \\sqrt{\\pi/2}\\, s / \\sqrt{n}`.

Example
-------
>>> from tad_zstack.bench.timing import summarize
>>> stats = summarize([1.0, 2.0, 3.0, 4.0, 5.0])
>>> stats.median_ms, stats.n
(3.0, 5)
>>> stats.ci_low_ms < 3.0 < stats.ci_high_ms
True
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from time import perf_counter
from typing import Any, Callable, Dict, Sequence

import numpy as np
import torch

from .. import defaults

__all__ = ["TimingStats", "summarize", "time_callable"]

logger = logging.getLogger(__name__)

MEDIAN_EFFICIENCY = math.sqrt(math.pi / 2.0)
"""Ratio of the standard errors of sample median and mean for normal data."""


@dataclass(frozen=True)
class TimingStats:
    """
    Summary of repeated wall-clock measurements in milliseconds.
    """

    median_ms: float
    ci_low_ms: float
    ci_high_ms: float
    mean_ms: float
    std_ms: float
    n: int

    @property
    def half_width_ms(self) -> float:
        """Half-width of the confidence interval."""
        return 0.5 * (self.ci_high_ms - self.ci_low_ms)

    def overlaps(self, other: TimingStats) -> bool:
        """Whether the confidence intervals of both measurements overlap."""
        return self.ci_low_ms <= other.ci_high_ms and other.ci_low_ms <= self.ci_high_ms

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def summarize(samples_ms: Sequence[float]) -> TimingStats:
    """
    Median and 95% confidence interval of timing samples.

    Parameters
    ----------
    samples_ms : Sequence[float]
        At least two samples in milliseconds.

    Returns
    -------
    TimingStats
        Summary statistics.

    Raises
    ------
    ValueError
        If fewer than two samples are given.
    """
    x = np.asarray(samples_ms, dtype=np.float64)
    if x.size < 2:
        raise ValueError(f"Need at least two timing samples, got {x.size}.")

    median = float(np.median(x))
    std = float(np.std(x, ddof=1))
    hw = defaults.CI_Z * MEDIAN_EFFICIENCY * std / math.sqrt(x.size)

    return TimingStats(
        median_ms=median,
        ci_low_ms=median - hw,
        ci_high_ms=median + hw,
        mean_ms=float(np.mean(x)),
        std_ms=std,
        n=int(x.size),
    )


def _sync() -> None:
    if torch.cuda.is_available():
        torch.cuda.synchronize()


def time_callable(
    fn: Callable[[], Any],
    repeats: int = defaults.BENCH_REPEATS,
    warmup: int = defaults.BENCH_WARMUP,
) -> TimingStats:
    """
    Time a callable without arguments.

    Parameters
    ----------
    fn : Callable[[], Any]
        Function to time.
    repeats : int, optional
        Number of timed calls. Defaults to `30`.
    warmup : int, optional
        Number of untimed calls before the measurement. Defaults to `3`.

    Returns
    -------
    TimingStats
        Summary of the timed calls.
    """
    if repeats < 2:
        raise ValueError(f"Need at least two repetitions, got {repeats}.")
    if warmup < 0:
        raise ValueError(f"Number of warm-up runs must not be negative, got {warmup}.")
    if repeats < defaults.BENCH_REPEATS:
        logger.warning(
            "Only %d repetitions, confidence intervals need at least %d.",
            repeats,
            defaults.BENCH_REPEATS,
        )

    for _ in range(warmup):
        fn()
    _sync()

    samples = []
    for _ in range(repeats):
        t0 = perf_counter()
        fn()
        _sync()
        samples.append(1000.0 * (perf_counter() - t0))

    return summarize(samples)
