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
Test the run report.
"""
from pathlib import Path

import pytest

from tad_zstack.exception import ZStackError
from tad_zstack.pipeline import RunReport, StageRecord


def make_report() -> RunReport:
    report = RunReport(input_frames=40)
    report.record(StageRecord("fast_search", True, 40, 9, wall_ms=12.5))
    report.record(StageRecord("coverage", False, 9, 9, wall_ms=0.1))
    report.output_frames = list(range(10, 19))
    report.segment = {"start_frame": 1, "end_frame": 2, "frames": [10, 18]}
    return report


def test_record() -> None:
    report = make_report()
    assert [r.name for r in report.stages] == ["fast_search", "coverage"]
    assert report.stages[1].enabled is False
    assert report.error is None


def test_without_timings() -> None:
    report = make_report()
    data = report.without_timings()

    assert [r["wall_ms"] for r in data["stages"]] == [0.0, 0.0]
    assert report.stages[0].wall_ms == 12.5


def test_json(tmp_path: Path) -> None:
    report = make_report()
    assert RunReport.from_json(report.to_json()) == report

    path = report.write(tmp_path / "sub" / "run.json")
    assert path.is_file()
    assert RunReport.from_json(path.read_text()) == report


def test_negative_time() -> None:
    with pytest.raises(ValueError):
        StageRecord("stack", True, 2, 2, wall_ms=-1.0)


def test_malformed() -> None:
    with pytest.raises(ZStackError):
        RunReport.from_dict({"stages": [{"name": "stack", "speed": 1}]})
