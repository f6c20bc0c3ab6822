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
Test the focus-measure operators.
"""
import pytest
import torch

from tad_zstack.measure import (
    FMOperator,
    fm_lapm,
    fm_lapv,
    fm_teng,
    fm_voll4,
    get_operator,
    sobel_energy,
)
from tad_zstack.typing import DD

from ..conftest import DEVICE
from .samples import samples

sample_list = ["ones", "rows", "column-ramp", "row-ramp", "dot", "cubes"]

ops = ["voll4", "teng", "lapm", "lapv"]


@pytest.mark.parametrize("dtype", [torch.float, torch.double])
@pytest.mark.parametrize("name", sample_list)
@pytest.mark.parametrize("op", ops)
def test_fixture(dtype: torch.dtype, name: str, op: str) -> None:
    dd: DD = {"device": DEVICE, "dtype": dtype}

    sample = samples[name]
    frame = sample["frame"].to(**dd)
    ref = sample[op]  # type: ignore[literal-required]

    value = get_operator(op)(frame)
    assert value.dtype == dtype
    assert value.shape == torch.Size([])
    assert pytest.approx(ref, abs=1e-4) == value.cpu().item()


@pytest.mark.parametrize("op", ops)
def test_batch(op: str) -> None:
    frames = torch.stack([samples[name]["frame"] for name in sample_list[:5]])
    fm = get_operator(op)

    batch = fm(frames)
    assert batch.shape == (5,)
    for i in range(5):
        assert pytest.approx(fm(frames[i]).item()) == batch[i].item()

    nested = fm(frames.reshape(5, 1, 3, 3))
    assert nested.shape == (5, 1)


@pytest.mark.parametrize("c", [0.0, 0.3, 1.0])
@pytest.mark.parametrize("shape", [(3, 3), (5, 7), (8, 4)])
def test_constant(c: float, shape: tuple) -> None:
    frame = torch.full(shape, c, dtype=torch.double)
    h = shape[0]

    assert fm_teng(frame).item() == 0.0
    assert fm_lapm(frame).item() == 0.0
    assert fm_lapv(frame).item() == 0.0
    assert pytest.approx(h * c * c, abs=1e-12) == fm_voll4(frame).item()


@pytest.mark.parametrize("op", ops)
def test_homogeneity(op: str) -> None:
    degree = {"voll4": 2, "teng": 2, "lapm": 1, "lapv": 2}[op]
    gen = torch.Generator().manual_seed(3)
    frame = torch.rand((17, 23), generator=gen, dtype=torch.double)
    fm = get_operator(op)

    for s in (0.25, 0.5, 0.9):
        ref = s**degree * fm(frame).item()
        assert pytest.approx(ref, rel=1e-9) == fm(s * frame).item()


@pytest.mark.parametrize("op", ["teng", "lapm", "lapv"])
def test_flip(op: str) -> None:
    gen = torch.Generator().manual_seed(5)
    frame = torch.rand((9, 12), generator=gen, dtype=torch.double)
    fm = get_operator(op)

    ref = fm(frame).item()
    assert pytest.approx(ref, rel=1e-12) == fm(torch.flip(frame, (-2, -1))).item()


def test_flip_voll4() -> None:
    gen = torch.Generator().manual_seed(5)
    frame = torch.rand((9, 12), generator=gen, dtype=torch.double)

    ref = fm_voll4(frame).item()
    assert pytest.approx(ref, rel=1e-12) == fm_voll4(torch.flip(frame, (-1,))).item()


@pytest.mark.parametrize("op", ops)
def test_input_unchanged(op: str) -> None:
    gen = torch.Generator().manual_seed(7)
    frame = torch.rand((2, 9, 12), generator=gen, dtype=torch.double)
    copy = frame.clone()

    get_operator(op)(frame)
    assert torch.equal(frame, copy)


def test_sobel_energy_shape() -> None:
    frame = torch.rand((6, 9), dtype=torch.double)
    assert sobel_energy(frame).shape == (4, 7)
    assert pytest.approx(fm_teng(frame).item()) == sobel_energy(frame).sum().item()


def test_parse() -> None:
    assert FMOperator.parse("TENG") is FMOperator.TENG
    assert FMOperator.parse(FMOperator.LAPV) is FMOperator.LAPV
    assert get_operator("voll4") is fm_voll4

    with pytest.raises(ValueError):
        FMOperator.parse("brenner")


def test_fail() -> None:
    with pytest.raises(ValueError):
        fm_teng(torch.zeros((2, 5)))

    with pytest.raises(ValueError):
        fm_voll4(torch.zeros(9))
