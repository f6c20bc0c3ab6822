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
Test the three focus-stacking methods.
"""
from typing import Tuple

import pytest
import torch

from tad_zstack import defaults
from tad_zstack.exception import DimensionMismatchError
from tad_zstack.imgcore import ZStack
from tad_zstack.measure import fm_teng
from tad_zstack.simsynth import SceneSpec, SceneTruth, gaussian_blur, simulate
from tad_zstack.stacking import (
    StackMethod,
    focus_map_teng,
    haar_forward,
    haar_inverse,
    median_relabel,
    stack_frames,
    stack_neighbor,
    stack_pixel,
    stack_wavelet,
    tile_scores,
)
from tad_zstack.typing import Tensor

methods = [StackMethod.PIXEL, StackMethod.NEIGHBOR, StackMethod.WAVELET]


def rmse(a: Tensor, b: Tensor) -> float:
    return float(torch.sqrt(torch.mean((a - b) ** 2)))


def two_planes() -> Tuple[ZStack, SceneTruth]:
    """Left half sharp in frame 0, right half in frame 1."""
    stack, truth = simulate(SceneSpec.layered(128, 96, [3, 13], 16, seed=21))
    return stack.subset(truth.plane_best), truth


@pytest.mark.parametrize("method", methods)
def test_identical(method: StackMethod) -> None:
    torch.manual_seed(3)
    frame = torch.rand((20, 13), dtype=torch.double)
    kwargs = {"levels": 2} if method == StackMethod.WAVELET else {}
    result = stack_frames([frame, frame, frame], method, **kwargs)

    assert result.n_frames == 3
    assert result.method == method
    assert (result.image - frame).abs().max() < 1e-9
    if result.label_map is not None:
        assert (result.label_map == 0).all()


@pytest.mark.parametrize("method", [StackMethod.PIXEL, StackMethod.NEIGHBOR])
def test_labels_copy(method: StackMethod) -> None:
    stack, _ = two_planes()
    result = stack_frames(stack, method)

    labels = result.label_map
    assert labels is not None
    assert labels.shape == (96, 128)
    assert int(labels.min()) >= 0 and int(labels.max()) < len(stack)

    # every pixel is copied verbatim
    picked = torch.gather(stack.frames, 0, labels.unsqueeze(0)).squeeze(0)
    assert (picked == result.image).all()

    scaled = result.label_frame()
    assert float(scaled.max()) <= 1.0


def textured(image: Tensor) -> Tensor:
    """Pixels whose windowed focus value lies in the upper half."""
    fmap = focus_map_teng(image, defaults.PIXEL_WINDOW)
    return fmap > fmap.median()


def test_pixel_two_planes() -> None:
    stack, truth = two_planes()
    result = stack_pixel(stack)

    labels = result.label_map
    assert labels is not None

    # flat patches carry no focus information, nor does the split halo
    halo = defaults.PIXEL_WINDOW
    mask = textured(truth.all_in_focus)
    left = mask[:, : 64 - halo]
    right = mask[:, 64 + halo :]
    assert (labels[:, : 64 - halo] == 0)[left].double().mean() > 0.9
    assert (labels[:, 64 + halo :] == 1)[right].double().mean() > 0.9

    aif = truth.all_in_focus
    assert rmse(result.image, aif) < min(rmse(f, aif) for f in stack.frames)


def test_pixel_blurred_copy() -> None:
    _, truth = two_planes()
    aif = truth.all_in_focus
    result = stack_pixel([aif, gaussian_blur(aif, 5.0)])

    labels = result.label_map
    assert labels is not None
    assert (labels == 0)[textured(aif)].double().mean() > 0.9

    # a blurred copy never wins where the sharp one has the larger focus value
    sharp = focus_map_teng(aif, defaults.PIXEL_WINDOW)
    soft = focus_map_teng(gaussian_blur(aif, 5.0), defaults.PIXEL_WINDOW)
    assert (labels[sharp > 1.01 * soft] == 0).all()


def test_neighbor_two_planes() -> None:
    stack, truth = two_planes()
    result = stack_neighbor(stack, block=16, median_window=3)

    labels = result.label_map
    assert labels is not None
    expected = torch.zeros_like(labels)
    expected[:, 64:] = 1

    # at most one tile column misses the depth split
    wrong = (labels != expected).sum(dim=1)
    assert int(wrong.max()) <= 16

    aif = truth.all_in_focus
    assert rmse(result.image, aif) < min(rmse(f, aif) for f in stack.frames)


def test_wavelet_two_planes() -> None:
    stack, truth = two_planes()
    result = stack_wavelet(stack, levels=4)

    assert result.label_map is None
    assert result.image.shape == (96, 128)
    assert float(result.image.min()) >= 0.0 and float(result.image.max()) <= 1.0

    aif = truth.all_in_focus
    assert rmse(result.image, aif) <= min(rmse(f, aif) for f in stack.frames)


@pytest.mark.parametrize("method", methods)
def test_sharpness(method: StackMethod) -> None:
    stack, _ = two_planes()
    result = stack_frames(stack, method)

    best = float(fm_teng(stack.frames).max())
    assert float(fm_teng(result.image)) >= 0.95 * best


def test_wavelet_noisy_copy() -> None:
    _, truth = two_planes()
    clean = truth.all_in_focus

    gen = torch.Generator().manual_seed(5)
    noise = 0.02 * torch.randn(clean.shape, generator=gen, dtype=clean.dtype)
    noisy = (clean + noise).clamp(0.0, 1.0)

    fused = stack_wavelet([clean, noisy]).image
    assert rmse(fused, clean) <= rmse(noisy, clean)
    assert rmse(fused, noisy) <= rmse(clean, noisy)


def test_haar_roundtrip() -> None:
    torch.manual_seed(7)
    x = torch.rand((3, 48, 64), dtype=torch.double)

    coeffs = haar_forward(x, 4)
    assert coeffs.approx.shape == (3, 3, 4)
    assert len(coeffs.details) == 4
    assert coeffs.details[0][0].shape == (3, 24, 32)

    assert (haar_inverse(coeffs) - x).abs().max() < 1e-9


def test_haar_constant() -> None:
    coeffs = haar_forward(torch.full((4, 4), 0.5, dtype=torch.double), 1)

    assert coeffs.approx.tolist() == [[1.0, 1.0], [1.0, 1.0]]
    for band in coeffs.details[0]:
        assert (band == 0).all()


def test_haar_fail() -> None:
    with pytest.raises(ValueError):
        haar_forward(torch.zeros((6, 8)), 2)

    with pytest.raises(ValueError):
        haar_forward(torch.zeros((8, 8)), 0)


def test_tile_scores() -> None:
    frames = torch.rand((2, 20, 35), dtype=torch.double)
    scores = tile_scores(frames, 16)

    assert scores.shape == (2, 2, 3)
    assert torch.allclose(scores.sum(dim=(1, 2)), fm_teng(frames))


def test_median_islands() -> None:
    labels = torch.zeros((6, 6), dtype=torch.long)
    labels[1, 1] = 2
    labels[4, 3] = 1
    labels[0, 5] = 1

    assert (median_relabel(labels, 3) == 0).all()
    assert (median_relabel(labels, 1) == labels).all()


def test_median_keeps_regions() -> None:
    labels = torch.zeros((6, 6), dtype=torch.long)
    labels[:, 3:] = 1
    assert (median_relabel(labels, 3) == labels).all()


def test_fail() -> None:
    frame = torch.rand((12, 12), dtype=torch.double)

    with pytest.raises(ValueError):
        stack_pixel([frame])

    with pytest.raises(DimensionMismatchError):
        stack_pixel([frame, torch.rand((12, 13), dtype=torch.double)])

    with pytest.raises(ValueError):
        stack_wavelet([frame, frame], levels=4)

    with pytest.raises(ValueError):
        stack_neighbor([frame, frame], block=0)

    with pytest.raises(ValueError):
        stack_neighbor([frame, frame], median_window=2)

    with pytest.raises(ValueError):
        stack_frames([frame, frame], "laplace")

    with pytest.raises(ValueError):
        stack_wavelet([frame, frame], levels=2).label_frame()
