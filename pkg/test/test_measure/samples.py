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
Hand-computed focus measures on raw-value fixtures (intensities outside of
[0, 1] are fine for the operators themselves).
"""
from typing import Dict

import torch

from tad_zstack.typing import Tensor, TypedDict


class Record(TypedDict):
    """Format of the fixtures."""

    frame: Tensor
    """Frame of shape `(h, w)`."""

    voll4: float
    """Vollath's F4."""

    teng: float
    """Tenengrad."""

    lapm: float
    """Sum-modified Laplacian."""

    lapv: float
    """Variance of the Laplacian."""


def _ramp() -> Tensor:
    return torch.tensor(
        [[0.0, 1.0, 2.0], [0.0, 1.0, 2.0], [0.0, 1.0, 2.0]], dtype=torch.double
    )


def _dot() -> Tensor:
    frame = torch.zeros((3, 3), dtype=torch.double)
    frame[1, 1] = 1.0
    return frame


samples: Dict[str, Record] = {
    "ones": Record(
        {
            "frame": torch.ones((3, 3), dtype=torch.double),
            # 3 rows with 2 lag-1 products minus 1 lag-2 product
            "voll4": 3.0,
            "teng": 0.0,
            "lapm": 0.0,
            "lapv": 0.0,
        }
    ),
    "rows": Record(
        {
            "frame": torch.tensor(
                [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [0.0, 0.0, 0.0]],
                dtype=torch.double,
            ),
            # lag-1: 2 + 6 + 20 + 30, lag-2: 3 + 24
            "voll4": 31.0,
            # interior pixel: Gx = 15 - 9, Gy = -1 - 2*2 - 3
            "teng": 6.0**2 + 8.0**2,
            "lapm": abs(10.0 - 4.0 - 6.0) + abs(10.0 - 2.0 - 0.0),
            "lapv": 0.0,
        }
    ),
    "column-ramp": Record(
        {
            "frame": _ramp(),
            "voll4": 3.0 * (0.0 * 1.0 + 1.0 * 2.0) - 3.0 * (0.0 * 2.0),
            "teng": 64.0,
            "lapm": 0.0,
            "lapv": 0.0,
        }
    ),
    "row-ramp": Record(
        {
            "frame": _ramp().T.contiguous(),
            "voll4": (0.0 + 2.0 + 8.0) - (0.0 + 1.0 + 4.0),
            "teng": 64.0,
            "lapm": 0.0,
            "lapv": 0.0,
        }
    ),
    "dot": Record(
        {
            "frame": _dot(),
            "voll4": 0.0,
            "teng": 0.0,
            "lapm": 4.0,
            "lapv": 0.0,
        }
    ),
    "cubes": Record(
        {
            # columns x^3 = (0, 1, 8, 27) in every row
            "frame": torch.tensor([[0.0, 1.0, 8.0, 27.0]] * 4, dtype=torch.double),
            "voll4": 4.0 * ((0.0 + 8.0 + 216.0) - (0.0 + 27.0)),
            "teng": 2.0 * (4.0 * 8.0) ** 2 + 2.0 * (4.0 * 26.0) ** 2,
            "lapm": 2.0 * (6.0 + 12.0),
            # interior responses (6, 12) per row, mean 9
            "lapv": 9.0,
        }
    ),
}
