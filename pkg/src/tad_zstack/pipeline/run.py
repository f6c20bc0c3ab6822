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
Pipeline: Driver
================

Runs the configured stages in order on a stack loaded from the input
directory (or given directly). The run report is written even if a stage
fails; the failure is re-raised as :class:`~tad_zstack.exception.StageError`.
"""
from __future__ import annotations

import logging
from typing import Optional

from ..exception import StageError, ZStackError
from ..imgcore.frame import ZStack
from ..imgcore.io import load_stack
from .config import PipelineConfig
from .report import RunReport
from .stages import FrameSet, build_stage

__all__ = ["run_pipeline"]

logger = logging.getLogger(__name__)


def run_pipeline(cfg: PipelineConfig, stack: Optional[ZStack] = None) -> RunReport:
    """
    Execute a pipeline.

    Parameters
    ----------
    cfg : PipelineConfig
        Stages and input/output locations.
    stack : Optional[ZStack], optional
        Input frames. Defaults to `None`, i.e., the frames are read from
        `cfg.io.input_dir`.

    Returns
    -------
    RunReport
        Frame counts, timings and stage results.

    Raises
    ------
    ConfigError
        If a stage is misconfigured (raised before any stage runs).
    StageError
        If a stage fails. The partial report is attached.
    """
    stages = [build_stage(s, cfg.io) for s in cfg.stages]

    if stack is None:
        stack = load_stack(cfg.io.input_dir, stride=cfg.io.stride)

    report = RunReport(input_frames=len(stack))
    frames = FrameSet(stack, list(range(len(stack))))
    logger.info(
        "Pipeline on %d frames: %s.",
        len(stack),
        " -> ".join(s.name for s in stages) or "no stages",
    )

    for stage in stages:
        try:
            frames = stage.run(frames, report)
        except (ZStackError, ValueError, OSError, MemoryError) as e:
            report.error = {"stage": stage.name, "cause": str(e)}
            report.output_frames = list(frames.indices)
            logger.error("Stage '%s' failed: %s", stage.name, e)
            if cfg.io.report_path is not None:
                report.write(cfg.io.report_path)
            raise StageError(stage.name, e, report) from e

    report.output_frames = list(frames.indices)
    if cfg.io.report_path is not None:
        path = report.write(cfg.io.report_path)
        logger.info("Run report written to '%s'.", path)

    return report

