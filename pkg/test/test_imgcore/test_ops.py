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
Test downscaling, frame differences and dark masks.
"""
import pytest
import torch

from tad_zstack.exception import DimensionMismatchError
from tad_zstack.imgcore import dark_mask, downscale, frame_diff_mad
from tad_zstack.typing import DD

from ..conftest import DEVICE


@pytest.mark.parametrize("dtype", [torch.float, torch.double])
def test_downscale_box(dtype: torch.dtype) -> None:
    dd: DD = {"device": DEVICE, "dtype": dtype}

    # 6x6 checkerboard of 2x2 blocks with values 0.2 and 0.6
    block = torch.tensor([[0.2, 0.6, 0.2], [0.6, 0.2, 0.6], [0.2, 0.6, 0.2]], **dd)
    frame = block.repeat_interleave(2, 0).repeat_interleave(2, 1)

    small = downscale(frame, 3, 3)
    assert small.shape == (3, 3)
    assert small.dtype == dtype
    assert pytest.approx(block.flatten().tolist(), abs=1e-6) == small.flatten().tolist()


def test_downscale_batch_keeps_mean() -> None:
    frames = torch.rand((2, 12, 18), dtype=torch.double)
    small = downscale(frames, 6, 4)

    assert small.shape == (2, 4, 6)
    ref = frames.mean(dim=(-2, -1)).tolist()
    assert pytest.approx(ref) == small.mean(dim=(-2, -1)).tolist()


def test_downscale_identity() -> None:
    frame = torch.rand((4, 5), dtype=torch.double)
    assert (downscale(frame, 5, 4) == frame).all()


def test_downscale_fail() -> None:
    frame = torch.rand((8, 8), dtype=torch.double)

    with pytest.raises(ValueError):
        downscale(frame, 2, 4)

    with pytest.raises(ValueError):
        downscale(frame, 9, 4)


def test_frame_diff_mad() -> None:
    a = torch.zeros((4, 4), dtype=torch.double)
    b = torch.full((4, 4), 0.25, dtype=torch.double)
    assert pytest.approx(0.25) == frame_diff_mad(a, b).item()
    assert frame_diff_mad(a, a).item() == 0.0

    batch = torch.stack([a, b])
    assert pytest.approx([0.25, 0.0]) == frame_diff_mad(batch, b).tolist()

    with pytest.raises(DimensionMismatchError):
        frame_diff_mad(a, torch.zeros((4, 5), dtype=torch.double))


def test_dark_mask() -> None:
    frame = torch.tensor([[0.0, 0.03, 0.05], [0.5, 1.0, 0.039]], dtype=torch.double)
    mask = dark_mask(frame)

    assert mask.dtype == torch.bool
    assert mask.tolist() == [[True, True, False], [False, False, True]]

    with pytest.raises(ValueError):
        dark_mask(frame, 0.0)
