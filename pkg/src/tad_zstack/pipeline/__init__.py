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
Pipeline
========

Configurable chain of the processing stages: two-pass fast search, full focus
coverage and stacking. Each stage can be disabled, in which case its input is
passed through. A run produces a JSON report with frame counts and timings
per stage.

Example
-------
>>> from tad_zstack.pipeline import IOConfig, PipelineConfig, StageConfig
>>> from tad_zstack.pipeline import run_pipeline
>>> from tad_zstack.simsynth import SceneSpec, simulate
>>> spec = SceneSpec.layered(48, 48, [12], 32, seed=3)
>>> stack, truth = simulate(spec)
>>> cfg = PipelineConfig(
...     stages=[StageConfig("fast_search", parameters={"coarse_stride": 2})],
...     io=IOConfig(input_dir="unused"),
... )
>>> report = run_pipeline(cfg, stack)
>>> report.input_frames, len(report.output_frames) < 32
(32, True)
"""
from .config import *
from .report import *
from .run import *
from .stages import *
