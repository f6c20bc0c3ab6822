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
Torch Z-stack processing
========================

Processing of microscope Z-stacks in PyTorch: the focused segment of a stack
is found from a coarse focal curve, a minimal set of frames covering every
focused area is extracted, and the frames are fused into an all-in-focus
image. A synthetic scene renderer provides stacks with known ground truth.

.. note::

   This project is still in early development and the API is subject to change.


Example
-------
>>> import tad_zstack as zs
>>> spec = zs.simsynth.SceneSpec.layered(64, 48, [10, 22], 32, seed=1)
>>> stack, truth = zs.simsynth.simulate(spec)
>>> result = zs.full_focus_coverage(stack)
>>> len(result.selected) >= 1
True
>>> fused = zs.stack_frames(stack.subset(truth.plane_best), "wavelet")
>>> fused.image.shape
torch.Size([48, 64])
"""
from . import (
    bench,
    coverage,
    defaults,
    exception,
    imgcore,
    measure,
    peaks,
    pipeline,
    simsynth,
    stacking,
    typing,
)
from .__version__ import __version__
from .coverage import full_focus_coverage
from .imgcore import ZStack, load_stack
from .peaks import fast_search
from .stacking import stack_frames

__all__ = [
    "ZStack",
    "load_stack",
    "fast_search",
    "full_focus_coverage",
    "stack_frames",
    "bench",
    "coverage",
    "defaults",
    "exception",
    "imgcore",
    "measure",
    "peaks",
    "pipeline",
    "simsynth",
    "stacking",
    "typing",
    "__version__",
]
