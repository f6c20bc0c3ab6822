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
Full focus coverage
===================

Extraction of a minimal frame set that keeps, for every sample area, at least
one frame containing its focused image. Frames are selected per sector of a
grid ("Parts") or by sector votes ("Best3") and then filtered for blurred
frames, frames showing dirt, and duplicates. Every decision is recorded in an
audit trail.

Example
-------
>>> import torch
>>> from tad_zstack.coverage import CoverageConfig, full_focus_coverage
>>> from tad_zstack.imgcore import ZStack
>>> torch.manual_seed(0)  # doctest: +ELLIPSIS
<torch._C.Generator object at ...>
>>> frame = 0.2 + 0.6 * torch.rand((24, 24), dtype=torch.double)
>>> stack = ZStack(torch.stack([frame, frame]))
>>> result = full_focus_coverage(stack, CoverageConfig())
>>> result.selected
[0]
"""
from .config import *
from .coverage import *
from .filters import *
from .result import *
from .select import *
