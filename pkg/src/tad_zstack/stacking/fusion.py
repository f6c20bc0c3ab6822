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
Focus stacking: Dispatch
========================
"""
from __future__ import annotations

import logging
from typing import Any, Sequence, Union

from ..imgcore.frame import ZStack
from ..typing import Tensor
from .neighbor import stack_neighbor
from .pixel import stack_pixel
from .result import FusionResult, StackMethod
from .wavelet import stack_wavelet

__all__ = ["stack_frames"]

logger = logging.getLogger(__name__)


_METHODS = {
    StackMethod.PIXEL: stack_pixel,
    StackMethod.NEIGHBOR: stack_neighbor,
    StackMethod.WAVELET: stack_wavelet,
}


def stack_frames(
    frames: Union[ZStack, Tensor, Sequence[Tensor]],
    method: Union[str, StackMethod] = StackMethod.WAVELET,
    **kwargs: Any,
) -> FusionResult:
    """
    Fuse frames with the given method.

    Parameters
    ----------
    frames : ZStack | Tensor | Sequence[Tensor]
        At least two frames of equal shape.
    method : str | StackMethod, optional
        Stacking algorithm. Defaults to wavelet-based.
    **kwargs : Any
        Parameters of the algorithm (`window`, `block` and `median_window`,
        or `levels`).

    Returns
    -------
    FusionResult
        Fused image.
    """
    method = StackMethod.parse(method)
    result = _METHODS[method](frames, **kwargs)
    logger.debug(
        "Fused %d frames with the %s method.", result.n_frames, method.value
    )
    return result
