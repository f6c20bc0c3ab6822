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
Coverage: Full focus coverage
=============================

Composition of selection and filters:

dark masks -> sector maps -> selection (parts or best3) -> blur filter ->
dirt filter -> duplicate filter -> sector owners of the final frames
"""
from __future__ import annotations

import logging
from typing import Optional

import torch

from ..exception import EmptyCoverageError, EmptyStackError
from ..imgcore.frame import ZStack
from ..measure.curve import focal_curve
from .config import CoverageConfig, SelectionMethod
from .filters import Audit, drop_blurred, drop_dirt, drop_duplicates
from .result import AuditRecord, CoverageResult
from .select import sector_maps, sector_owners, select_best3, select_parts

__all__ = ["full_focus_coverage"]

logger = logging.getLogger(__name__)


def full_focus_coverage(
    stack: ZStack, cfg: Optional[CoverageConfig] = None
) -> CoverageResult:
    """
    Extract a minimal frame set covering every in-focus area of the stack.

    Frames without a single valid sector are recorded as `dark`. Candidates of
    the selection are then filtered for blur, dirt and duplicates. The final
    sector owners are restricted to the selected frames.

    Parameters
    ----------
    stack : ZStack
        Non-empty stack.
    cfg : Optional[CoverageConfig], optional
        Coverage configuration. Defaults to `CoverageConfig()`.

    Returns
    -------
    CoverageResult
        Selected frames, audit trail and sector owners.

    Raises
    ------
    EmptyStackError
        If the stack has no frames.
    EmptyCoverageError
        If every sector is dark in every frame or no candidate survives.
    """
    if len(stack) == 0:
        raise EmptyStackError("Cannot extract the coverage of an empty stack.")
    if cfg is None:
        cfg = CoverageConfig()

    fmap = sector_maps(stack, cfg)

    audit: Audit = {}
    dark = torch.nonzero(~fmap.valid.any(dim=(-2, -1))).flatten().tolist()
    for k in dark:
        audit[k] = "dark"

    if cfg.method == SelectionMethod.BEST3:
        candidates, _ = select_best3(stack, cfg, fmap)
    else:
        candidates, _ = select_parts(stack, cfg, fmap)
    logger.debug("Selection (%s) candidates: %s", cfg.method.value, candidates)

    curve = focal_curve(stack, cfg.operator)
    indices = drop_blurred(stack, candidates, curve, cfg, audit)
    indices = drop_dirt(curve, indices, cfg, audit)
    indices = drop_duplicates(stack, indices, cfg, curve, audit)

    if len(indices) == 0:
        raise EmptyCoverageError(
            "No frame survived the blur, dirt and duplicate filters."
        )

    for k in indices:
        audit[k] = "kept"

    allowed = torch.zeros(len(stack), dtype=torch.bool, device=stack.device)
    allowed[indices] = True
    owner = sector_owners(fmap, allowed)

    logger.info(
        "Coverage of %d frames: selected %s (%d dark, %d candidates).",
        len(stack),
        indices,
        len(dark),
        len(candidates),
    )

    return CoverageResult(
        selected=sorted(indices),
        audit=[AuditRecord(k, audit[k]) for k in sorted(audit)],
        sector_owner=owner.tolist(),
    )
