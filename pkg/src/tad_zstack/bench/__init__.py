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
Benchmarks
==========

Timing harness and evaluation suites: runtime of the focus-measure
operators, the selection methods, the filters and the stacking methods, the
frame-count reduction of the two-pass scan, and the accuracy of the fast
search on synthetic scenes.

Timings are medians of at least 30 warm runs with 95% confidence intervals.
Suites run on a single torch thread unless requested otherwise.

Example
-------
>>> from tad_zstack.bench import bench_scan_strategy
>>> from tad_zstack.simsynth import SceneSpec
>>> spec = SceneSpec.layered(32, 32, [100], 200)
>>> result = bench_scan_strategy(spec, coarse_stride=8)
>>> result["frames_full_slow"], result["reduction"] > 2.0
(200, True)
"""
from .evaluate import *
from .operators import *
from .scan import *
from .suites import *
from .timing import *
