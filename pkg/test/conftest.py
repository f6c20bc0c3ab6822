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
Setup for pytest.
"""
from __future__ import annotations

import numpy as np
import pytest
import torch

# synthetic scenes carry their own seeds, global state stays fixed anyway
np.random.seed(0)
torch.manual_seed(0)
torch.use_deterministic_algorithms(True)

DEVICE: torch.device | None = None
"""Name of Device."""

OPTIONAL_MARKERS = {
    "bench": "Benchmark tests need the '--bench' option.",
    "large": "Suite-scale tests need the '--large' option.",
}
"""Markers of tests that only run on request, with their skip reason."""


def pytest_addoption(parser: pytest.Parser) -> None:
    """Set up additional command line options."""

    parser.addoption(
        "--cuda",
        action="store_true",
        help="Use GPU as default device.",
    )
    parser.addoption(
        "--bench",
        action="store_true",
        help="Run the wall-clock ordering tests (marker 'bench').",
    )
    parser.addoption(
        "--large",
        action="store_true",
        help="Run the suite-scale checks on synthetic scenes (marker 'large').",
    )


def pytest_configure(config: pytest.Config) -> None:
    """Pytest configuration hook."""
    global DEVICE

    if config.getoption("--cuda"):
        if not torch.cuda.is_available():
            raise RuntimeError("No cuda devices available.")

        DEVICE = torch.device("cuda:0")
        torch.use_deterministic_algorithms(False)
        torch.set_default_device(DEVICE)  # type: ignore[attr-defined]
    else:
        torch.use_deterministic_algorithms(True)
        DEVICE = None

    config.addinivalue_line("markers", "cuda: mark test that require CUDA.")
    config.addinivalue_line("markers", "bench: wall-clock ordering checks.")
    config.addinivalue_line("markers", "large: suite-scale synthetic checks.")


def pytest_runtest_setup(item: pytest.Function) -> None:
    """Skip CUDA tests without a device and opt-in tests without their option."""

    for _ in item.iter_markers(name="cuda"):
        if not torch.cuda.is_available():
            pytest.skip("Torch not compiled with CUDA or no CUDA device available.")

    for name, reason in OPTIONAL_MARKERS.items():
        if item.get_closest_marker(name) and not item.config.getoption(f"--{name}"):
            pytest.skip(reason)
