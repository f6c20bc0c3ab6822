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
Peak search
===========

Fast search of the focused area of a Z-stack: the focal curve of a coarse scan
is smoothed, extended by mirroring, and the most prominent peak is found by a
binary search over the prominence threshold. The peak is finally mapped back
to a segment of the original stack.

Example
-------
>>> import torch
>>> from tad_zstack.peaks import bin_search_prominent_peak
>>> curve = torch.tensor([0.0, 1.0, 0.0, 3.0, 0.0, 2.0, 0.0])
>>> peak = bin_search_prominent_peak(curve)
>>> print(peak.index, peak.prominence)
3 3.0
"""
from .detect import *
from .preprocess import *
from .search import *
