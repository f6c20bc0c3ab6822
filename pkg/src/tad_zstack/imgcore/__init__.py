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
Image core
==========

Representation of frames and Z-stacks, image I/O, and the pixel primitives
shared by all other modules.

Example
-------
>>> import torch
>>> from tad_zstack.imgcore import ZStack, frame_diff_mad
>>> stack = ZStack(torch.full((2, 3, 3), 0.5, dtype=torch.double), stride=10)
>>> stack
ZStack(n_frames=2, height=3, width=3, stride=10, dtype=torch.float64, device=cpu)
>>> print(frame_diff_mad(stack[0], stack[1]).item())
0.0
"""
from .frame import *
from .io import *
from .ops import *
