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
Synthetic scenes: Random numbers
================================

Counter-based SplitMix64 generator. The `i`-th output of a stream with key
`s` is `mix(s + i * gamma)` with the golden-ratio increment
`gamma = 0x9E3779B97F4A7C15` and the finalizer

.. code-block:: text

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)

in 64-bit unsigned arithmetic. Streams are keyed by `(seed, stream)`, so every
frame can draw its own numbers independently of the rendering order.

Example
-------
>>> from tad_zstack.simsynth.rng import SplitMix64
>>> hex(int(SplitMix64.from_state(0).next_uint64(1)[0]))
'0xe220a8397b1dcdaf'
"""
from __future__ import annotations

from typing import Tuple, Union

import numpy as np

__all__ = ["SplitMix64", "mix64"]


GAMMA = np.uint64(0x9E3779B97F4A7C15)
MUL1 = np.uint64(0xBF58476D1CE4E5B9)
MUL2 = np.uint64(0x94D049BB133111EB)
MASK = (1 << 64) - 1

Size = Union[int, Tuple[int, ...]]


def mix64(z: np.ndarray) -> np.ndarray:
    """
    SplitMix64 finalizer, applied elementwise to `uint64` values.
    """
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * MUL1
        z = (z ^ (z >> np.uint64(27))) * MUL2
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """
    Seedable 64-bit generator with independent streams.

    Parameters
    ----------
    seed : int
        Seed (reduced modulo 2**64).
    stream : int, optional
        Stream key, e.g. a frame index. Negative keys are allowed.
    """

    __slots__ = ["state", "counter"]

    def __init__(self, seed: int, stream: int = 0) -> None:
        key = np.array([seed & MASK, stream & MASK], dtype=np.uint64)
        mixed = mix64(key)
        with np.errstate(over="ignore"):
            self.state = mix64(mixed[0] ^ (mixed[1] * GAMMA))
        self.counter = 0

    @classmethod
    def from_state(cls, state: int) -> SplitMix64:
        """Generator starting at a raw state (the reference sequence)."""
        rng = cls.__new__(cls)
        rng.state = np.uint64(state & MASK)
        rng.counter = 0
        return rng

    def next_uint64(self, n: int) -> np.ndarray:
        """Next `n` raw outputs."""
        i = np.arange(self.counter + 1, self.counter + n + 1, dtype=np.uint64)
        self.counter += n
        with np.errstate(over="ignore"):
            return mix64(self.state + i * GAMMA)

    def random(self, size: Size = 1) -> np.ndarray:
        """Uniform doubles in [0, 1) from the upper 53 bits."""
        n = int(np.prod(size))
        u = self.next_uint64(n) >> np.uint64(11)
        return (u.astype(np.float64) * 2.0**-53).reshape(size)

    def uniform(self, low: float, high: float, size: Size = 1) -> np.ndarray:
        """Uniform doubles in [low, high)."""
        return low + (high - low) * self.random(size)

    def integers(self, low: int, high: int, size: Size = 1) -> np.ndarray:
        """Uniform integers in [low, high)."""
        if high <= low:
            raise ValueError(f"Empty integer range [{low}, {high}).")
        return low + np.floor(self.random(size) * (high - low)).astype(np.int64)

    def randint(self, low: int, high: int) -> int:
        """Single uniform integer in [low, high)."""
        return int(self.integers(low, high, 1)[0])

    def normal(self, size: Size = 1) -> np.ndarray:
        """Standard normal samples (Box-Muller)."""
        n = int(np.prod(size))
        m = (n + 1) // 2
        u1 = self.random(m)
        u2 = self.random(m)

        r = np.sqrt(-2.0 * np.log1p(-u1))
        t = 2.0 * np.pi * u2
        z = np.concatenate([r * np.cos(t), r * np.sin(t)])
        return z[:n].reshape(size)
