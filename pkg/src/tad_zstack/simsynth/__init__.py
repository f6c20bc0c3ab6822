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
Synthetic scenes
================

Ground-truth oracle for all algorithms: a procedural all-in-focus scene is
rendered through a depth-dependent Gaussian defocus model with an optional
dirt layer, vignetting, duplicate frames and noise. Random draws come from a
counter-based SplitMix64 generator, so scenes are bit-reproducible.

Example
-------
>>> from tad_zstack.measure import focal_curve
>>> from tad_zstack.simsynth import SceneSpec, simulate
>>> stack, truth = simulate(SceneSpec.layered(64, 48, [7], 15, seed=7))
>>> int(focal_curve(stack, "teng").values.argmax()) == truth.plane_best[0]
True
"""
from .render import *
from .rng import *
from .scene import *
from .suite import *
