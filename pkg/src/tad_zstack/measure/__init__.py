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
Focus measures
==============

The four focus-measure (FM) operators VOLL4, TENG, LAPM and LAPV, the focal
curve of a stack and the evaluation of operators on a sector grid.

Example
-------
>>> import torch
>>> from tad_zstack.measure import fm_lapm
>>> frame = torch.zeros((3, 3), dtype=torch.double)
>>> frame[1, 1] = 1.0
>>> print(fm_lapm(frame).item())
4.0
"""
from .curve import *
from .operators import *
from .sector import *
