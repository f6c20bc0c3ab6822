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
Test the pipeline driver.
"""
import json
from pathlib import Path

import pytest
import torch

from tad_zstack.exception import ConfigError, StageError
from tad_zstack.imgcore import ZStack, read_image
from tad_zstack.pipeline import (
    IOConfig,
    PipelineConfig,
    RunReport,
    StageConfig,
    run_pipeline,
)
from tad_zstack.simsynth import SceneSpec, save_scene, simulate


def full_config(tmp_path: Path) -> PipelineConfig:
    return PipelineConfig.from_dict(
        {
            "stages": [
                {"name": "fast_search", "parameters": {"coarse_stride": 2}},
                {"name": "coverage"},
                {"name": "stack", "parameters": {"method": "wavelet"}},
            ],
            "io": {
                "input_dir": str(tmp_path / "frames"),
                "output_dir": str(tmp_path / "out"),
                "report_path": str(tmp_path / "run.json"),
            },
        }
    )


def test_from_directory(tmp_path: Path) -> None:
    stack, truth = simulate(SceneSpec.layered(48, 48, [12], 32, seed=3))
    save_scene(stack, truth, tmp_path / "frames")

    cfg = full_config(tmp_path)
    report = run_pipeline(cfg)

    assert report.input_frames == 32
    assert [r.name for r in report.stages] == ["fast_search", "coverage", "stack"]
    assert report.error is None

    assert report.segment is not None and report.coverage is not None
    lo, hi = report.segment["frames"]
    assert report.stages[0].output_frames == hi - lo + 1
    assert report.coverage["selected"] == report.output_frames
    assert all(lo <= i <= hi for i in report.output_frames)
    assert report.stages[1].output_frames == len(report.output_frames)

    assert report.stack is not None
    assert read_image(report.stack["output"]).shape == (48, 48)

    written = RunReport.from_json((tmp_path / "run.json").read_text())
    assert written == report


def test_repeatable(tmp_path: Path) -> None:
    stack, truth = simulate(SceneSpec.layered(48, 48, [12], 32, seed=3))
    save_scene(stack, truth, tmp_path / "frames")

    cfg = full_config(tmp_path)
    first = run_pipeline(cfg).without_timings()
    second = run_pipeline(cfg).without_timings()
    assert first == second


def test_given_stack() -> None:
    stack, _ = simulate(SceneSpec.layered(128, 96, [5, 15], 20, seed=3))
    cfg = PipelineConfig([StageConfig("coverage")], IOConfig("does/not/exist"))

    report = run_pipeline(cfg, stack)
    assert report.output_frames == [5, 15]
    assert report.stack is None


def test_no_stages() -> None:
    stack, _ = simulate(SceneSpec.layered(32, 32, [2], 6, seed=1))
    cfg = PipelineConfig([], IOConfig("unused"))

    report = run_pipeline(cfg, stack)
    assert report.stages == []
    assert report.output_frames == list(range(6))


def test_all_disabled() -> None:
    stack, _ = simulate(SceneSpec.layered(32, 32, [2], 6, seed=1))
    stages = [StageConfig(n, enabled=False) for n in ("fast_search", "coverage")]
    report = run_pipeline(PipelineConfig(stages, IOConfig("unused")), stack)

    assert report.output_frames == list(range(6))
    assert [r.enabled for r in report.stages] == [False, False]


def test_stage_error(tmp_path: Path) -> None:
    stack = ZStack(torch.zeros((4, 16, 16), dtype=torch.double))
    path = tmp_path / "run.json"
    cfg = PipelineConfig(
        [StageConfig("coverage"), StageConfig("stack")],
        IOConfig("unused", report_path=str(path)),
    )

    with pytest.raises(StageError) as exc:
        run_pipeline(cfg, stack)

    err = exc.value
    assert err.stage == "coverage"
    assert isinstance(err.report, RunReport)
    assert err.report.error is not None
    assert err.report.error["stage"] == "coverage"
    assert err.report.output_frames == [0, 1, 2, 3]

    data = json.loads(path.read_text())
    assert data["error"]["stage"] == "coverage"
    assert data["stack"] is None


def test_config_error_first() -> None:
    cfg = PipelineConfig(
        [StageConfig("stack", parameters={"blocks": 8})], IOConfig("does/not/exist")
    )
    with pytest.raises(ConfigError):
        run_pipeline(cfg)


def test_missing_input() -> None:
    cfg = PipelineConfig([StageConfig("coverage")], IOConfig("does/not/exist"))
    with pytest.raises(FileNotFoundError):
        run_pipeline(cfg)
