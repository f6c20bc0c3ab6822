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
Type annotations: Z-stack
=========================

Domain-specific type annotations.

A *frame* is a tensor of shape ``(h, w)`` and a batch of frames has the shape
``(n, h, w)``. Binary masks are boolean tensors of the frame shape.
"""
from typing import Dict, List, Tuple, Union

from tad_mctc.typing import Callable, Tensor

__all__ = ["FocusMeasure", "Frame", "BinaryMask", "Rect", "JSONDict"]


Frame = Tensor
"""Grayscale image of shape ``(h, w)`` with intensities in [0, 1]."""

BinaryMask = Tensor
"""Boolean tensor, `True` marks masked (dark) pixels."""

FocusMeasure = Callable[[Tensor], Tensor]
"""Focus measure operator mapping ``(..., h, w)`` to ``(...)``."""

Rect = Tuple[int, int, int, int]
"""Rectangle as ``(x, y, width, height)`` in pixels."""

JSONDict = Dict[str, Union[int, float, str, bool, None, List, Dict]]
"""Loosely typed JSON object."""
