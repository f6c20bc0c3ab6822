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
Pipeline: Stages
================

Every stage consumes the frame set of its predecessor and hands its result
to the next stage. A disabled stage passes its input through unchanged.
Stages measure their own wall time and record it in the run report.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from time import perf_counter
from typing import Any, Dict, List, Optional, Type

from .. import defaults
from ..coverage import CoverageConfig, CoverageResult, full_focus_coverage
from ..exception import ConfigError
from ..imgcore.frame import ZStack
from ..imgcore.io import write_image, write_pgm
from ..peaks.search import fast_search
from ..stacking import StackMethod, stack_frames
from .config import IOConfig, StageConfig
from .report import RunReport, StageRecord

__all__ = [
    "FrameSet",
    "Stage",
    "FastSearchStage",
    "CoverageStage",
    "StackStage",
    "STAGES",
    "build_stage",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameSet:
    """
    Frames passed between stages.
    """

    stack: ZStack
    """Current frames."""

    indices: List[int]
    """Index of every current frame in the input stack."""

    def __len__(self) -> int:
        return len(self.stack)

    def subset(self, local: List[int]) -> FrameSet:
        """Frames at the given positions of this set."""
        return FrameSet(self.stack.subset(local), [self.indices[i] for i in local])


class Stage(ABC):
    """
    Abstract base class of the pipeline stages.
    """

    name: str = ""
    """Stage name used in configurations and reports."""

    allowed: tuple = ()
    """Admissible parameter names."""

    def __init__(
        self,
        parameters: Optional[Dict[str, Any]] = None,
        enabled: bool = True,
        io: Optional[IOConfig] = None,
    ) -> None:
        self.parameters = dict(parameters or {})
        self.enabled = enabled
        self.io = io

        unknown = set(self.parameters) - set(self.allowed)
        if unknown:
            raise ConfigError(
                f"Unknown parameters for stage '{self.name}': "
                f"{', '.join(sorted(unknown))}."
            )

    @abstractmethod
    def process(self, frames: FrameSet, report: RunReport) -> FrameSet:
        """Process the frames and store the stage results in the report."""

    def run(self, frames: FrameSet, report: RunReport) -> FrameSet:
        """
        Run the stage (or pass through if disabled) and record its timing.
        """
        logger.info("Stage '%s' starts with %d frames.", self.name, len(frames))

        t0 = perf_counter()
        out = self.process(frames, report) if self.enabled else frames
        ms = 1000.0 * (perf_counter() - t0)

        report.record(
            StageRecord(
                name=self.name,
                enabled=self.enabled,
                input_frames=len(frames),
                output_frames=len(out),
                wall_ms=ms,
            )
        )
        logger.info(
            "Stage '%s' %s: %d -> %d frames in %.1f ms.",
            self.name,
            "finished" if self.enabled else "passed through",
            len(frames),
            len(out),
            ms,
        )
        return out


class FastSearchStage(Stage):
    """
    Two-pass scan: search the focused segment on every `coarse_stride`-th
    frame and keep the frames of the segment.
    """

    name = "fast_search"
    allowed = (
        "op",
        "smooth_window",
        "rel_height",
        "merge_ratio",
        "coarse_stride",
        "downscale_to",
    )

    def process(self, frames: FrameSet, report: RunReport) -> FrameSet:
        p = self.parameters
        stride = int(p.get("coarse_stride", defaults.COARSE_STRIDE))
        if stride < 1:
            raise ConfigError(f"Coarse stride must be positive, got {stride}.")

        stack = frames.stack
        coarse = stack.subsample(stride)
        downscale_to = p.get("downscale_to")

        segment = fast_search(
            coarse,
            op=p.get("op", "voll4"),
            smooth_window=p.get("smooth_window"),
            rel_height=float(p.get("rel_height", defaults.SEGMENT_REL_HEIGHT)),
            downscale_to=tuple(downscale_to) if downscale_to is not None else None,
            merge_ratio=float(p.get("merge_ratio", defaults.SEGMENT_MERGE_RATIO)),
        )

        lo = min(segment.start_z // stack.stride, len(stack) - 1)
        hi = min(segment.end_z // stack.stride, len(stack) - 1)
        report.segment = {**segment.to_dict(), "frames": [lo, hi]}

        return frames.subset(list(range(lo, hi + 1)))


def _audit_in_input(result: CoverageResult, indices: List[int]) -> List[Dict]:
    out = []
    for rec in result.audit:
        reason = rec.reason
        if rec.duplicate_of >= 0:
            reason = f"dup_of:{indices[rec.duplicate_of]}"
        out.append({"index": indices[rec.index], "reason": reason})
    return out


class CoverageStage(Stage):
    """
    Full focus coverage; the parameters are those of
    :class:`~tad_zstack.coverage.config.CoverageConfig`.
    """

    name = "coverage"
    allowed = tuple(CoverageConfig.__dataclass_fields__)

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self.config = CoverageConfig.from_dict(self.parameters)

    def process(self, frames: FrameSet, report: RunReport) -> FrameSet:
        result = full_focus_coverage(frames.stack, self.config)
        out = frames.subset(result.selected)

        report.coverage = {
            "selected": list(out.indices),
            "counts": result.summary()["counts"],
            "audit": _audit_in_input(result, frames.indices),
        }
        return out


class StackStage(Stage):
    """
    Fuse the frames into one all-in-focus image, written to the output
    directory. A single frame is written as is.
    """

    name = "stack"
    allowed = (
        "method",
        "output",
        "labels",
        "window",
        "block",
        "median_window",
        "levels",
    )

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        try:
            self.method = StackMethod.parse(self.parameters.get("method", "wavelet"))
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def process(self, frames: FrameSet, report: RunReport) -> FrameSet:
        p = self.parameters
        kwargs = {
            k: int(p[k])
            for k in ("window", "block", "median_window", "levels")
            if k in p
        }

        label_frame = None
        if len(frames) == 1:
            image = frames.stack[0]
        else:
            result = stack_frames(frames.stack, self.method, **kwargs)
            image = result.image
            if result.label_map is not None and p.get("labels", True):
                label_frame = result.label_frame()

        written: Dict[str, Optional[str]] = {"output": None, "label_map": None}
        if self.io is not None and self.io.output_dir is not None:
            folder = Path(self.io.output_dir)
            folder.mkdir(parents=True, exist_ok=True)
            path = write_image(image, folder / str(p.get("output", "fused.pgm")))
            written["output"] = str(path)
            if label_frame is not None:
                labels = write_pgm(label_frame, folder / "labels.pgm")
                written["label_map"] = str(labels)

        report.stack = {
            "method": self.method.value,
            "n_frames": len(frames),
            **written,
        }
        return frames


STAGES: Dict[str, Type[Stage]] = {
    FastSearchStage.name: FastSearchStage,
    CoverageStage.name: CoverageStage,
    StackStage.name: StackStage,
}
"""Stage classes by name."""


def build_stage(cfg: StageConfig, io: Optional[IOConfig] = None) -> Stage:
    """
    Instantiate a stage from its descriptor.

    Raises
    ------
    ConfigError
        If the stage parameters are invalid.
    """
    return STAGES[cfg.name](cfg.parameters, enabled=cfg.enabled, io=io)
