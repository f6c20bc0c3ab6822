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
Test the operator benchmark and the scan-strategy model.
"""
import math

import pytest
import torch

from tad_zstack.bench import (
    bench_operators,
    bench_scan_strategy,
    parse_resolution,
    random_frames,
    run_suite,
    scan_suite,
)
from tad_zstack.simsynth import SceneSpec, scene_suite


@pytest.mark.parametrize(
    "text, expected", [("1920x1080", (1920, 1080)), ("160X120", (160, 120))]
)
def test_parse_resolution(text: str, expected: tuple) -> None:
    assert parse_resolution(text) == expected


@pytest.mark.parametrize("text", ["1920", "axb", "2x2", "640x480x3"])
def test_parse_resolution_fail(text: str) -> None:
    with pytest.raises(ValueError):
        parse_resolution(text)


def test_random_frames() -> None:
    a = random_frames(16, 8, n=2, seed=3)
    assert a.shape == (2, 8, 16)
    assert a.dtype == torch.double
    assert (a == random_frames(16, 8, n=2, seed=3)).all()
    assert not (a == random_frames(16, 8, n=2, seed=4)).all()


def test_bench_operators() -> None:
    rows = bench_operators(["32x24", (16, 16)], repeats=30, operators=["teng", "lapm"])

    assert [(r["operator"], r["resolution"]) for r in rows] == [
        ("teng", "32x24"),
        ("lapm", "32x24"),
        ("teng", "16x16"),
        ("lapm", "16x16"),
    ]
    for r in rows:
        assert r["n"] == 30
        assert r["ci_low_ms"] <= r["median_ms"] <= r["ci_high_ms"]


@pytest.mark.parametrize("repeats", [2, 29])
def test_bench_operators_repeats(repeats: int) -> None:
    with pytest.raises(ValueError, match="at least 30"):
        bench_operators(["16x16"], repeats=repeats, operators=["teng"])


def test_scan_strategy() -> None:
    spec = SceneSpec.layered(32, 32, [100], 200)
    result = bench_scan_strategy(spec, coarse_stride=8)

    lo, hi = result["segment"]
    assert result["frames_full_slow"] == 200
    assert result["frames_two_pass"] == 25 + hi - lo + 1
    assert result["reduction"] == pytest.approx(200 / result["frames_two_pass"])
    assert result["hit"] is True
    assert lo <= 100 <= hi


def test_scan_strategy_unit_stride() -> None:
    spec = SceneSpec.layered(32, 32, [30], 60)
    result = bench_scan_strategy(spec, coarse_stride=1)

    assert result["frames_two_pass"] > 60
    assert result["reduction"] < 1.0


def test_scan_strategy_fail() -> None:
    with pytest.raises(ValueError):
        bench_scan_strategy(SceneSpec.layered(32, 32, [30], 60), coarse_stride=0)


def test_scan_suite() -> None:
    specs = [SceneSpec.layered(32, 32, [z], 200, seed=z) for z in (60, 140)]
    result = scan_suite(specs, coarse_stride=8)

    assert result["coarse_stride"] == 8
    assert len(result["scenes"]) == 2
    reductions = [r["reduction"] for r in result["scenes"]]
    assert result["mean_reduction"] == pytest.approx(sum(reductions) / 2)
    assert result["min_reduction"] == min(reductions)


@pytest.mark.large
def test_scan_reduction() -> None:
    result = scan_suite(scene_suite("scan", 30), coarse_stride=8)
    assert all(r["hit"] for r in result["scenes"])
    assert result["mean_reduction"] >= 5.0


@pytest.mark.bench
def test_operator_ordering() -> None:
    result = run_suite("operators", resolutions=["1920x1080", "160x120"], repeats=30)
    stats = {(r["operator"], r["resolution"]): r for r in result["rows"]}

    order = ["voll4", "lapm", "lapv", "teng"]
    for fast, slow in zip(order, order[1:]):
        a, b = stats[(fast, "1920x1080")], stats[(slow, "1920x1080")]
        assert a["ci_high_ms"] < b["ci_low_ms"]

    area = (1920 * 1080) / (160 * 120)
    for op in order:
        ratio = stats[(op, "1920x1080")]["median_ms"]
        ratio /= stats[(op, "160x120")]["median_ms"]
        assert 0.3 * area <= ratio <= 3.0 * area
        assert not math.isnan(ratio)
