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
Test the sector grid and the sector focus measures.
"""
import pytest
import torch

from tad_zstack.exception import DimensionMismatchError
from tad_zstack.measure import SectorGrid, fm_teng, sector_fm
from tad_zstack.typing import DD

from ..conftest import DEVICE


def test_grid() -> None:
    assert SectorGrid.parse("3x5") == SectorGrid(3, 5)
    assert SectorGrid() == SectorGrid(4, 4)

    with pytest.raises(ValueError):
        SectorGrid.parse("3-5")

    with pytest.raises(ValueError):
        SectorGrid(0, 2)


def test_edges_remainder() -> None:
    rows, cols = SectorGrid(3, 2).edges(10, 7)
    assert rows == [0, 3, 6, 10]
    assert cols == [0, 3, 7]


def test_too_fine() -> None:
    with pytest.raises(ValueError):
        SectorGrid(4, 4).edges(11, 40)


@pytest.mark.parametrize("dtype", [torch.float, torch.double])
def test_single_sector(dtype: torch.dtype) -> None:
    dd: DD = {"device": DEVICE, "dtype": dtype}
    frame = torch.rand((7, 9), **dd)

    fmap = sector_fm(frame, SectorGrid(1, 1), "teng")
    assert fmap.values.shape == (1, 1)
    assert fmap.values[0, 0].item() == fm_teng(frame).item()
    assert fmap.valid.all()


def test_dark_frame() -> None:
    frame = torch.zeros((8, 8), dtype=torch.double)
    mask = torch.ones((8, 8), dtype=torch.bool)

    fmap = sector_fm(frame, SectorGrid(2, 2), mask=mask)
    assert not fmap.valid.any()


def test_dark_quadrant() -> None:
    frame = torch.rand((6, 6), dtype=torch.double)
    mask = torch.zeros((6, 6), dtype=torch.bool)
    mask[3:, :3] = True

    fmap = sector_fm(frame, SectorGrid(2, 2), mask=mask)
    assert fmap.valid.tolist() == [[True, True], [False, True]]


def test_half_masked_is_valid() -> None:
    frame = torch.rand((6, 6), dtype=torch.double)
    mask = torch.zeros((6, 6), dtype=torch.bool)
    mask[:, :3] = True

    # exactly half of the pixels
    fmap = sector_fm(frame, SectorGrid(1, 1), mask=mask)
    assert fmap.valid.all()


def test_batch() -> None:
    frames = torch.rand((3, 8, 8), dtype=torch.double)
    fmap = sector_fm(frames, SectorGrid(2, 2), "lapm")

    assert fmap.values.shape == (3, 2, 2)
    ref = sector_fm(frames[1], SectorGrid(2, 2), "lapm")
    assert pytest.approx(ref.values.tolist()[0]) == fmap.values[1].tolist()[0]
    assert pytest.approx(ref.values.tolist()[1]) == fmap.values[1].tolist()[1]


def test_mask_mismatch() -> None:
    with pytest.raises(DimensionMismatchError):
        sector_fm(
            torch.zeros((6, 6)),
            SectorGrid(1, 1),
            mask=torch.zeros((6, 5), dtype=torch.bool),
        )
