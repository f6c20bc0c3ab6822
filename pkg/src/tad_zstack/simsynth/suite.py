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
Synthetic scenes: Suites
========================

Reproducible scene collections for evaluations and benchmarks.

- ``fast_search``: 120 to 240 frames, one or two planes within 10% of the
  stack, dirt far from the planes, vignette and noise
- ``scan``: 640 to 960 frames with a single plane, for the two-pass scan
- ``coverage``: two to five planes with four duplicates per frame
- ``dirt``: one plane near the stack start with a dirt layer more than 1.5
  main peak widths away
- ``stacking``: two planes side by side, split at a random column off the
  16-pixel tile grid of the neighbor-based fusion
"""
from __future__ import annotations

from typing import Callable, Dict, List

from .. import defaults
from .rng import SplitMix64
from .scene import DirtSpec, PlaneSpec, SceneSpec, focus_margin

__all__ = ["scene_suite", "SUITE_KINDS"]


def _fast_search(rng: SplitMix64, seed: int, width: int, height: int) -> SceneSpec:
    n = rng.randint(120, 241)
    s = focus_margin(defaults.SIM_BLUR_SLOPE, n)

    # segment length (span + 2 s + 1) stays within 10% of the stack
    max_span = n // 10 - 2 * s - 1
    zs = [0]
    if max_span >= 4 and rng.randint(0, 2) == 1:
        zs.append(rng.randint(4, min(6, max_span) + 1))

    z0 = rng.randint(n // 5, 4 * n // 5 - zs[-1])
    zs = [z0 + z for z in zs]

    # dirt on the side with more room, at least 30 frames away
    if zs[0] > n - 1 - zs[-1]:
        dz = rng.randint(0, zs[0] - 30 + 1)
    else:
        dz = rng.randint(zs[-1] + 30, n)

    return SceneSpec.layered(
        width,
        height,
        zs,
        n,
        dirt=DirtSpec(dz),
        vignette_strength=0.3,
        noise_sigma=0.005,
        seed=seed,
    )


def _scan(rng: SplitMix64, seed: int, width: int, height: int) -> SceneSpec:
    n = rng.randint(640, 961)
    z = rng.randint(n // 10, 9 * n // 10)
    return SceneSpec.layered(
        width, height, [z], n, vignette_strength=0.2, noise_sigma=0.003, seed=seed
    )


def _coverage(rng: SplitMix64, seed: int, width: int, height: int) -> SceneSpec:
    k = rng.randint(2, 6)
    zs = [rng.randint(2, 5)]
    for _ in range(k - 1):
        zs.append(zs[-1] + rng.randint(4, 7))
    n = zs[-1] + rng.randint(3, 6)

    # planes in random order over the layout
    order = [int(i) for i in rng.random(k).argsort()]
    return SceneSpec.layered(
        width,
        height,
        [zs[i] for i in order],
        n,
        duplicates_per_frame=4,
        noise_sigma=0.004,
        seed=seed,
    )


def _dirt(rng: SplitMix64, seed: int, width: int, height: int) -> SceneSpec:
    n = rng.randint(50, 71)
    z = rng.randint(5, 9)

    # the main peak spans about frames 0 to 2z + 1, dirt lies beyond 1.5 of
    # those widths
    dz = rng.randint(4 * z + 6, n)
    return SceneSpec.layered(
        width,
        height,
        [z],
        n,
        dirt=DirtSpec(dz),
        vignette_strength=0.3,
        seed=seed,
    )


def _stacking(rng: SplitMix64, seed: int, width: int, height: int) -> SceneSpec:
    z0 = rng.randint(3, 8)
    z1 = z0 + rng.randint(8, 13)

    # the depth split falls on a column off the fusion tile grid
    block = defaults.NEIGHBOR_BLOCK
    split = rng.randint(width // 4, 3 * width // 4 + 1)
    if split % block == 0:
        split = min(width - 1, split + rng.randint(1, block))

    planes = (
        PlaneSpec((0, 0, split, height), z0),
        PlaneSpec((split, 0, width - split, height), z1),
    )
    return SceneSpec(width, height, planes, z1 + 5, seed=seed)


_BUILDERS: Dict[str, Callable[[SplitMix64, int, int, int], SceneSpec]] = {
    "fast_search": _fast_search,
    "scan": _scan,
    "coverage": _coverage,
    "dirt": _dirt,
    "stacking": _stacking,
}

SUITE_KINDS = tuple(_BUILDERS)
"""Available suite kinds."""


def scene_suite(
    kind: str, count: int, seed: int = 0, width: int = 128, height: int = 96
) -> List[SceneSpec]:
    """
    Reproducible list of scenes.

    Parameters
    ----------
    kind : str
        Suite kind, see :data:`SUITE_KINDS`.
    count : int
        Number of scenes.
    seed : int, optional
        Seed of the suite. Scene `i` uses the seed `seed + i`.
    width : int, optional
        Frame width. Defaults to `128`.
    height : int, optional
        Frame height. Defaults to `96`.

    Returns
    -------
    List[SceneSpec]
        Scenes of the suite.

    Raises
    ------
    ValueError
        If the kind is unknown.
    """
    if kind not in _BUILDERS:
        raise ValueError(
            f"Unknown scene suite '{kind}', choose from: {', '.join(SUITE_KINDS)}."
        )

    build = _BUILDERS[kind]
    rng = SplitMix64(seed, -100 - SUITE_KINDS.index(kind))
    return [build(rng, seed + i, width, height) for i in range(count)]
