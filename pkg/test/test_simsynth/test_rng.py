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
Test the counter-based random number generator.
"""
import numpy as np
import pytest

from tad_zstack.simsynth import SplitMix64, mix64


def test_reference_sequence() -> None:
    rng = SplitMix64.from_state(0)
    ref = [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    assert [int(v) for v in rng.next_uint64(3)] == ref


def test_counter() -> None:
    a = SplitMix64(42, 7)
    first = a.next_uint64(4)
    second = a.next_uint64(2)

    b = SplitMix64(42, 7)
    assert (b.next_uint64(6) == np.concatenate([first, second])).all()


def test_streams() -> None:
    a = SplitMix64(1, 0).random(16)
    b = SplitMix64(1, 1).random(16)
    c = SplitMix64(2, 0).random(16)
    d = SplitMix64(1, -1).random(16)

    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert np.array_equal(a, SplitMix64(1, 0).random(16))


def test_mix64_zero() -> None:
    assert int(mix64(np.uint64(0))) == 0


def test_random() -> None:
    u = SplitMix64(3).random((50, 40))
    assert u.shape == (50, 40)
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.02


def test_integers() -> None:
    rng = SplitMix64(4)
    k = rng.integers(-3, 5, 2000)

    assert k.min() == -3 and k.max() == 4
    assert set(np.unique(k).tolist()) == set(range(-3, 5))
    assert -3 <= rng.randint(-3, 5) < 5

    with pytest.raises(ValueError):
        rng.integers(2, 2)


def test_uniform() -> None:
    x = SplitMix64(5).uniform(2.0, 3.0, 100)
    assert x.min() >= 2.0 and x.max() < 3.0


def test_normal() -> None:
    z = SplitMix64(6).normal(20001)

    assert z.shape == (20001,)
    assert abs(z.mean()) < 0.03
    assert abs(z.std() - 1.0) < 0.03
    assert SplitMix64(6).normal((3, 5)).shape == (3, 5)
