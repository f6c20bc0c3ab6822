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
Test the reproducible scene suites.
"""
import pytest

from tad_zstack.simsynth import SUITE_KINDS, generate_scene, scene_suite


def test_kinds() -> None:
    assert set(SUITE_KINDS) == {"fast_search", "scan", "coverage", "dirt", "stacking"}


@pytest.mark.parametrize("kind", SUITE_KINDS)
def test_reproducible(kind: str) -> None:
    a = scene_suite(kind, 3, seed=11)
    b = scene_suite(kind, 3, seed=11)

    assert a == b
    assert [s.seed for s in a] == [11, 12, 13]
    assert a != scene_suite(kind, 3, seed=12)


def test_fast_search() -> None:
    for spec in scene_suite("fast_search", 10, seed=1):
        truth = generate_scene(spec)
        lo, hi = truth.focused_segment

        assert 120 <= spec.n_frames <= 240
        assert hi - lo + 1 <= spec.n_frames // 10
        assert spec.dirt is not None
        assert min(abs(spec.dirt.z_index - z) for z in truth.plane_best) >= 30


def test_scan() -> None:
    for spec in scene_suite("scan", 5, seed=2):
        assert 640 <= spec.n_frames <= 960
        assert len(spec.planes) == 1


def test_coverage() -> None:
    for spec in scene_suite("coverage", 10, seed=3):
        zs = sorted(p.z_index for p in spec.planes)

        assert 2 <= len(zs) <= 5
        assert spec.duplicates_per_frame == 4
        assert all(b - a >= 4 for a, b in zip(zs, zs[1:]))
        assert zs[-1] < spec.n_frames


def test_dirt() -> None:
    for spec in scene_suite("dirt", 10, seed=5):
        z = spec.planes[0].z_index

        assert spec.dirt is not None
        assert 5 <= z <= 8
        # beyond 1.5 widths of the main peak spanning frames 0 to 2z + 1
        assert spec.dirt.z_index - z > 1.5 * (2 * z + 1)
        assert spec.dirt.z_index < spec.n_frames


def test_stacking() -> None:
    for spec in scene_suite("stacking", 5, seed=4):
        z0, z1 = (p.z_index for p in spec.planes)
        split = spec.planes[0].region[2]

        assert z1 - z0 >= 8
        assert spec.width // 4 <= split < spec.width
        assert split % 16 != 0
        assert spec.planes[1].region == (split, 0, spec.width - split, spec.height)


def test_fail() -> None:
    with pytest.raises(ValueError):
        scene_suite("planes", 2)
