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
Synthetic scenes: Rendering
===========================

Defocus model of the synthetic stacks. Frame `k` shows every plane blurred
with a Gaussian of `sigma = blur_slope * |k - z|`, darkened by the (equally
defocused) dirt layer, multiplied by the vignette and disturbed by Gaussian
noise drawn from the stream `(seed, frame index)`.
"""
from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import torch
from torch.nn import functional as F

from .. import defaults
from ..exception import DimensionMismatchError
from ..imgcore.frame import ZStack
from ..imgcore.io import save_stack, write_pgm
from ..typing import Tensor
from .rng import SplitMix64
from .scene import SceneSpec, SceneTruth, generate_scene

__all__ = [
    "gaussian_kernel",
    "gaussian_blur",
    "vignette",
    "render_zstack",
    "simulate",
    "save_scene",
]

logger = logging.getLogger(__name__)


def gaussian_kernel(
    sigma: float,
    truncate: float = defaults.SIM_TRUNCATE,
    device: Optional[torch.device] = None,
    dtype: torch.dtype = torch.double,
) -> Tensor:
    """
    Normalized 1D Gaussian truncated at `truncate * sigma`.
    """
    radius = max(1, int(math.ceil(truncate * sigma)))
    x = torch.arange(-radius, radius + 1, device=device, dtype=dtype)
    k = torch.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def gaussian_blur(
    image: Tensor, sigma: float, truncate: float = defaults.SIM_TRUNCATE
) -> Tensor:
    """
    Separable Gaussian blur with edge replication.

    Parameters
    ----------
    image : Tensor
        Image(s) of shape `(..., h, w)`.
    sigma : float
        Standard deviation in pixels. Below `0.3` the image is returned
        unchanged; values above `max(h, w)` are capped.
    truncate : float, optional
        Kernel radius in units of sigma. Defaults to `3.0`.

    Returns
    -------
    Tensor
        Blurred image(s) of the input shape.
    """
    if sigma < defaults.SIM_IDENTITY_SIGMA:
        return image.clone()

    h, w = image.shape[-2:]
    sigma = min(sigma, float(max(h, w)))
    k = gaussian_kernel(sigma, truncate, device=image.device, dtype=image.dtype)
    r = k.numel() // 2

    x = image.reshape(-1, 1, h, w)
    x = F.conv2d(F.pad(x, (r, r, 0, 0), mode="replicate"), k.view(1, 1, 1, -1))
    x = F.conv2d(F.pad(x, (0, 0, r, r), mode="replicate"), k.view(1, 1, -1, 1))
    return x.reshape(image.shape)


def vignette(
    width: int,
    height: int,
    strength: float,
    device: Optional[torch.device] = None,
    dtype: torch.dtype = torch.double,
) -> Tensor:
    """
    Radial falloff `1 - strength * r^2`, with `r` normalized to 1 at the
    corners.
    """
    ys, xs = torch.meshgrid(
        torch.arange(height, device=device, dtype=dtype),
        torch.arange(width, device=device, dtype=dtype),
        indexing="ij",
    )
    cx, cy = 0.5 * (width - 1), 0.5 * (height - 1)
    r2 = ((xs - cx) ** 2 + (ys - cy) ** 2) / (cx * cx + cy * cy)
    return 1.0 - strength * r2


class _BlurCache:
    """Blurred copies of one image by sigma."""

    def __init__(self, image: Tensor) -> None:
        self.image = image
        self.cache: Dict[float, Tensor] = {}

    def __call__(self, sigma: float) -> Tensor:
        if sigma < defaults.SIM_IDENTITY_SIGMA:
            return self.image
        if sigma not in self.cache:
            self.cache[sigma] = gaussian_blur(self.image, sigma)
        return self.cache[sigma]


def render_zstack(
    truth: SceneTruth, spec: SceneSpec, stride: int = 1, offset: int = 0
) -> ZStack:
    """
    Render the frames of a scene.

    Parameters
    ----------
    truth : SceneTruth
        Ground truth generated from `spec`.
    spec : SceneSpec
        Scene description.
    stride : int, optional
        Render only every `stride`-th frame (coarse scan). Defaults to `1`.
    offset : int, optional
        First rendered frame. Defaults to `0`.

    Returns
    -------
    ZStack
        Frames `offset, offset + stride, ...` with z-step `stride`.

    Raises
    ------
    DimensionMismatchError
        If truth and spec describe different scenes.
    ValueError
        If `stride` or `offset` are invalid.
    """
    if tuple(truth.all_in_focus.shape) != (spec.height, spec.width):
        raise DimensionMismatchError(
            f"Scene truth of shape {tuple(truth.all_in_focus.shape)} does not "
            f"match the {spec.width}x{spec.height} scene."
        )
    if truth.n_frames != spec.n_output:
        raise DimensionMismatchError(
            f"Scene truth has {truth.n_frames} frames, the scene "
            f"{spec.n_output}."
        )
    if stride < 1:
        raise ValueError(f"Stride must be a positive integer, got {stride}.")
    if not 0 <= offset < spec.n_output:
        raise ValueError(f"Offset {offset} outside of {spec.n_output} frames.")

    aif = truth.all_in_focus
    texture = _BlurCache(aif)
    dirt = _BlurCache(truth.dirt_alpha) if truth.dirt_alpha is not None else None

    falloff = None
    if spec.vignette_strength > 0.0:
        falloff = vignette(
            spec.width, spec.height, spec.vignette_strength, aif.device, aif.dtype
        )

    frames = []
    for o in range(offset, spec.n_output, stride):
        k = o // spec.group

        frame = torch.empty_like(aif)
        for plane in spec.planes:
            x, y, w, h = plane.region
            sigma = spec.blur_slope * abs(k - plane.z_index)
            frame[y : y + h, x : x + w] = texture(sigma)[y : y + h, x : x + w]

        if dirt is not None and spec.dirt is not None:
            sigma = spec.blur_slope * abs(k - spec.dirt.z_index)
            frame = frame * (1.0 - defaults.SIM_DIRT_DARKENING * dirt(sigma))

        if falloff is not None:
            frame = frame * falloff

        if spec.noise_sigma > 0.0:
            noise = SplitMix64(spec.seed, o).normal((spec.height, spec.width))
            frame = frame + spec.noise_sigma * torch.from_numpy(noise).to(frame)

        frames.append(frame.clamp(0.0, 1.0))

    logger.debug(
        "Rendered %d of %d frames (stride %d).", len(frames), spec.n_output, stride
    )
    return ZStack(torch.stack(frames), stride=stride)


def simulate(
    spec: SceneSpec, stride: int = 1, offset: int = 0
) -> Tuple[ZStack, SceneTruth]:
    """
    Generate and render a scene.

    Example
    -------
    >>> from tad_zstack.simsynth import SceneSpec
    >>> stack, truth = simulate(SceneSpec.layered(32, 24, [3], 8))
    >>> len(stack), truth.plane_best
    (8, [3])
    """
    truth = generate_scene(spec)
    return render_zstack(truth, spec, stride=stride, offset=offset), truth


def save_scene(
    stack: ZStack,
    truth: SceneTruth,
    directory: Union[str, Path],
    suffix: str = ".pgm",
) -> Path:
    """
    Write the frames to `directory` and the ground truth to
    `directory/truth/` (`all_in_focus.pgm` and `truth.json`).

    The truth lives in a subdirectory so that the frame directory can be
    loaded as stack directly.
    """
    folder = Path(directory)
    save_stack(stack, folder, suffix=suffix)

    sub = folder / "truth"
    sub.mkdir(parents=True, exist_ok=True)
    write_pgm(truth.all_in_focus, sub / "all_in_focus.pgm")
    (sub / "truth.json").write_text(json.dumps(truth.to_dict(), indent=2))

    return folder
