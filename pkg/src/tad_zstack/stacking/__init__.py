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
Focus stacking
==============

Fusion of a full-focus-coverage frame set into one all-in-focus image.

- pixel-based: per-pixel argmax of a windowed TENG focus map
- neighbor-based: per-tile argmax of TENG with median relabeling
- wavelet-based: Haar multilevel transform, max-abs detail fusion and mean
  approximation band

The pixel- and neighbor-based methods copy every output pixel from one of
the inputs and report the source frame per pixel in a label map.

Example
-------
>>> import torch
>>> from tad_zstack.stacking import StackMethod, stack_frames
>>> frame = torch.linspace(0, 1, 64, dtype=torch.double).reshape(8, 8)
>>> result = stack_frames([frame, frame], StackMethod.PIXEL)
>>> bool((result.image == frame).all()), int(result.label_map.max())
(True, 0)
"""
from .focusmap import *
from .fusion import *
from .neighbor import *
from .pixel import *
from .result import *
from .wavelet import *
