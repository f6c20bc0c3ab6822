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
Test the focal curve.
"""
import pytest
import torch

from tad_zstack.exception import EmptyStackError
from tad_zstack.imgcore import ZStack
from tad_zstack.measure import FMOperator, FocalCurve, focal_curve
from tad_zstack.simsynth import SceneSpec, simulate
from tad_zstack.typing import DD

from ..conftest import DEVICE
from .samples import samples


@pytest.mark.parametrize("dtype", [torch.float, torch.double])
def test_dot_stack(dtype: torch.dtype) -> None:
    dd: DD = {"device": DEVICE, "dtype": dtype}

    zeros = torch.zeros((3, 3), **dd)
    stack = ZStack([zeros, samples["dot"]["frame"].to(**dd), zeros], stride=4)

    curve = focal_curve(stack, FMOperator.LAPM)
    assert curve.values.tolist() == [0.0, 4.0, 0.0]
    assert curve.source_stride == 4
    assert curve.mirror_offset == 0
    assert curve.smooth_window == 1
    assert not curve.is_mirrored


def test_identical_frames() -> None:
    frame = torch.rand((6, 6), dtype=torch.double)
    curve = focal_curve(ZStack(frame.expand(3, 6, 6).clone()), "teng")

    assert len(curve) == 3
    assert (curve.values == curve.values[0]).all()


def test_chunks() -> None:
    stack = ZStack(torch.rand((7, 5, 5), dtype=torch.double))

    ref = focal_curve(stack, "lapv")
    chunked = focal_curve(stack, "lapv", chunk_size=3)
    assert pytest.approx(ref.values.tolist(), rel=1e-12) == chunked.values.tolist()


def test_empty() -> None:
    with pytest.raises(EmptyStackError):
        focal_curve(ZStack(torch.zeros((0, 3, 3))))


@pytest.mark.parametrize("op", ["voll4", "teng", "lapm", "lapv"])
def test_argmax_on_scene(op: str) -> None:
    spec = SceneSpec.layered(48, 48, [9], 20, seed=7)
    stack, truth = simulate(spec)

    curve = focal_curve(stack, op)
    assert int(torch.argmax(curve.values)) == truth.plane_best[0]


def test_validation() -> None:
    with pytest.raises(ValueError):
        FocalCurve(torch.zeros((2, 2)))

    with pytest.raises(ValueError):
        FocalCurve(torch.zeros(0))

    with pytest.raises(ValueError):
        FocalCurve(torch.tensor([0.0, float("nan")]))

    with pytest.raises(ValueError):
        FocalCurve(torch.zeros(3), mirror_offset=3)

    curve = FocalCurve(torch.arange(4.0))
    assert curve.n_source == 4
    assert curve.numpy().tolist() == [0.0, 1.0, 2.0, 3.0]
