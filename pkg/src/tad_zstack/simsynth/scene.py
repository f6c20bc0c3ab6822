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
Synthetic scenes: Scene description
===================================

A scene is a procedural all-in-focus texture split into rectangular regions
("planes"), each in focus at one frame of the stack. Optionally, a layer of
dirt blobs is in focus at another frame.

Frames of the stack are indexed in output space: with `d` duplicates per
frame, base frame `k` appears at output indices `k * (d + 1)` to
`k * (d + 1) + d`.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import torch
from torch.nn import functional as F

from .. import defaults
from ..exception import ConfigError
from ..measure.sector import SectorGrid
from ..typing import Rect, Tensor
from .rng import SplitMix64

__all__ = [
    "PlaneSpec",
    "DirtSpec",
    "SceneSpec",
    "SceneTruth",
    "generate_scene",
    "procedural_texture",
    "LAYOUTS",
]


TEXTURE_STREAM = -1
LINE_STREAM = -2
DIRT_STREAM = -3


LAYOUTS: Dict[int, List[Rect]] = {
    1: [(0, 0, 4, 4)],
    2: [(0, 0, 2, 4), (2, 0, 2, 4)],
    3: [(0, 0, 1, 4), (1, 0, 2, 4), (3, 0, 1, 4)],
    4: [(0, 0, 1, 4), (1, 0, 1, 4), (2, 0, 1, 4), (3, 0, 1, 4)],
    5: [(0, 0, 1, 4), (1, 0, 1, 4), (2, 0, 1, 4), (3, 0, 1, 2), (3, 2, 1, 2)],
}
"""Plane layouts in cells `(col, row, cols, rows)` of a 4x4 layout grid."""


@dataclass(frozen=True)
class PlaneSpec:
    """
    Rectangular region in focus at one frame.
    """

    region: Rect
    """Region `(x, y, width, height)` in pixels."""

    z_index: int
    """Base frame at which the region is in focus."""

    def __post_init__(self) -> None:
        object.__setattr__(self, "region", tuple(int(v) for v in self.region))
        if len(self.region) != 4:
            raise ConfigError(f"Region must be (x, y, w, h), got {self.region}.")
        x, y, w, h = self.region
        if x < 0 or y < 0 or w < 1 or h < 1:
            raise ConfigError(f"Invalid plane region {self.region}.")
        if self.z_index < 0:
            raise ConfigError(f"Plane z-index must be >= 0, got {self.z_index}.")

    def to_dict(self) -> Dict[str, Any]:
        return {"region": list(self.region), "z_index": self.z_index}


@dataclass(frozen=True)
class DirtSpec:
    """
    Dust or condensate in the optical path, in focus at one frame.
    """

    z_index: int
    """Base frame at which the dirt is in focus."""

    blob_count: int = 5
    """Number of circular blobs."""

    blob_radius: float = 3.0
    """Blob radius in pixels."""

    def __post_init__(self) -> None:
        if self.z_index < 0 or self.blob_count < 1 or self.blob_radius <= 0:
            raise ConfigError(f"Invalid dirt layer {self}.")


@dataclass(frozen=True)
class SceneSpec:
    """
    Description of a synthetic Z-stack.

    Raises
    ------
    ConfigError
        If regions overlap or leave pixels uncovered, or a z-index lies
        outside of the stack.
    """

    width: int
    """Frame width in pixels."""

    height: int
    """Frame height in pixels."""

    planes: Tuple[PlaneSpec, ...]
    """Regions tiling the frame."""

    n_frames: int
    """Number of base frames (without duplicates)."""

    blur_slope: float = defaults.SIM_BLUR_SLOPE
    """Blur sigma per frame of defocus."""

    dirt: Optional[DirtSpec] = None
    """Optional dirt layer."""

    vignette_strength: float = 0.0
    """Radial falloff `1 - strength * r^2` with `r = 1` at the corners."""

    duplicates_per_frame: int = 0
    """Extra copies inserted after every base frame."""

    noise_sigma: float = 0.0
    """Standard deviation of per-pixel Gaussian noise."""

    seed: int = 0
    """Seed of all random draws."""

    def __post_init__(self) -> None:
        planes = tuple(
            p if isinstance(p, PlaneSpec) else PlaneSpec(**p) for p in self.planes
        )
        object.__setattr__(self, "planes", planes)
        if isinstance(self.dirt, dict):
            object.__setattr__(self, "dirt", DirtSpec(**self.dirt))

        m = defaults.MIN_FRAME_SIZE
        if self.width < m or self.height < m:
            raise ConfigError(f"Frames must be at least {m}x{m} pixels.")
        if self.n_frames < 1:
            raise ConfigError(f"Need at least one frame, got {self.n_frames}.")
        if len(self.planes) == 0:
            raise ConfigError("A scene needs at least one plane.")
        if self.blur_slope < 0.0 or self.noise_sigma < 0.0:
            raise ConfigError("Blur slope and noise must be non-negative.")
        if not 0.0 <= self.vignette_strength < 1.0:
            raise ConfigError(
                f"Vignette strength must lie in [0, 1), got "
                f"{self.vignette_strength}."
            )
        if self.duplicates_per_frame < 0:
            raise ConfigError("Number of duplicates must be non-negative.")

        for plane in self.planes:
            if plane.z_index >= self.n_frames:
                raise ConfigError(
                    f"Plane z-index {plane.z_index} outside of {self.n_frames} "
                    "frames."
                )
        if self.dirt is not None and self.dirt.z_index >= self.n_frames:
            raise ConfigError(
                f"Dirt z-index {self.dirt.z_index} outside of {self.n_frames} "
                "frames."
            )

        self._check_tiling()

    def _check_tiling(self) -> None:
        cover = np.zeros((self.height, self.width), dtype=np.int64)
        for plane in self.planes:
            x, y, w, h = plane.region
            if x + w > self.width or y + h > self.height:
                raise ConfigError(f"Plane region {plane.region} exceeds frame.")
            cover[y : y + h, x : x + w] += 1

        if np.any(cover > 1):
            raise ConfigError("Plane regions overlap.")
        if np.any(cover == 0):
            raise ConfigError("Plane regions do not cover the frame.")

    @property
    def group(self) -> int:
        """Output frames per base frame."""
        return self.duplicates_per_frame + 1

    @property
    def n_output(self) -> int:
        """Number of frames of the rendered stack."""
        return self.n_frames * self.group

    @classmethod
    def layered(
        cls,
        width: int,
        height: int,
        z_indices: Sequence[int],
        n_frames: int,
        **kwargs: Any,
    ) -> SceneSpec:
        """
        Scene with one to five planes laid out on the 4x4 layout grid.

        The cells use the edges of the default sector grid, so no default
        sector straddles two planes.
        """
        if len(z_indices) not in LAYOUTS:
            raise ConfigError(
                f"Layouts exist for 1 to {max(LAYOUTS)} planes, got "
                f"{len(z_indices)}."
            )

        cells = defaults.SIM_LAYOUT_CELLS
        try:
            ys, xs = SectorGrid(cells, cells).edges(height, width)
        except ValueError as e:
            raise ConfigError(str(e)) from e

        planes = []
        for (c, r, nc, nr), z in zip(LAYOUTS[len(z_indices)], z_indices):
            region = (xs[c], ys[r], xs[c + nc] - xs[c], ys[r + nr] - ys[r])
            planes.append(PlaneSpec(region, int(z)))

        return cls(width, height, tuple(planes), n_frames, **kwargs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "width": self.width,
            "height": self.height,
            "planes": [p.to_dict() for p in self.planes],
            "n_frames": self.n_frames,
            "blur_slope": self.blur_slope,
            "dirt": asdict(self.dirt) if self.dirt is not None else None,
            "vignette_strength": self.vignette_strength,
            "duplicates_per_frame": self.duplicates_per_frame,
            "noise_sigma": self.noise_sigma,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> SceneSpec:
        """
        Build a scene from its JSON representation.

        Raises
        ------
        ConfigError
            If fields are unknown, missing or invalid.
        """
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(
                f"Unknown scene fields: {', '.join(sorted(unknown))}."
            )
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigError(f"Invalid scene description: {e}") from e

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> SceneSpec:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SceneTruth:
    """
    Ground truth of a scene. Frame indices are output indices.
    """

    all_in_focus: Tensor
    """Sharp texture of shape `(h, w)`."""

    depth_map: Tensor
    """Base frame of focus per pixel, shape `(h, w)`."""

    plane_best: List[int]
    """Sharpest frame of every plane."""

    focused_segment: Tuple[int, int]
    """Frames in which some plane is near-sharp (inclusive)."""

    dirt_frames: List[int] = field(default_factory=list)
    """Frames in which the dirt is in focus."""

    dirt_alpha: Optional[Tensor] = None
    """Coverage of the dirt blobs in [0, 1], shape `(h, w)`."""

    n_frames: int = 0
    """Number of frames of the rendered stack."""

    def to_dict(self) -> Dict[str, Any]:
        """Metadata without image data."""
        return {
            "plane_best": list(self.plane_best),
            "focused_segment": list(self.focused_segment),
            "dirt_frames": list(self.dirt_frames),
            "n_frames": self.n_frames,
        }


def _value_noise(
    rng: SplitMix64, width: int, height: int, dtype: torch.dtype
) -> Tensor:
    noise = torch.zeros((height, width), dtype=dtype)
    for octave, weight in enumerate((0.5, 0.3, 0.2)):
        cells = 4 * 2**octave
        gx = cells + 1
        gy = max(2, round(cells * height / width) + 1)

        grid = torch.from_numpy(rng.random((gy, gx))).to(dtype)
        up = F.interpolate(
            grid.reshape(1, 1, gy, gx),
            size=(height, width),
            mode="bilinear",
            align_corners=True,
        )
        noise += weight * up.reshape(height, width)
    return noise


def _draw_lines(image: Tensor, rng: SplitMix64) -> None:
    h, w = image.shape
    count = max(1, (h * w) // defaults.SIM_LINE_AREA)

    # centers cycle through the layout cells, each plane gets its share
    cells = 1
    if count >= defaults.SIM_LAYOUT_CELLS**2:
        cells = defaults.SIM_LAYOUT_CELLS
        count = math.ceil(count / cells**2) * cells**2
    for i, row in enumerate(rng.random((count, 5))):
        u, v, angle, length, thick = (float(r) for r in row)
        col, cell_row = (i % cells**2) % cells, (i % cells**2) // cells
        cx, cy = (col + u) * w / cells, (cell_row + v) * h / cells
        half_len = 0.5 * (8.0 + 16.0 * length)
        half_width = 1.0 + 0.5 * thick

        dx = half_len * math.cos(math.pi * angle)
        dy = half_len * math.sin(math.pi * angle)
        xa, ya, xb, yb = cx - dx, cy - dy, cx + dx, cy + dy

        x0 = max(0, math.floor(min(xa, xb) - half_width))
        x1 = min(w, math.ceil(max(xa, xb) + half_width) + 1)
        y0 = max(0, math.floor(min(ya, yb) - half_width))
        y1 = min(h, math.ceil(max(ya, yb) + half_width) + 1)
        if x0 >= x1 or y0 >= y1:
            continue

        ys, xs = torch.meshgrid(
            torch.arange(y0, y1, dtype=image.dtype),
            torch.arange(x0, x1, dtype=image.dtype),
            indexing="ij",
        )

        # distance to the segment via the clamped projection
        vx, vy = xb - xa, yb - ya
        t = (((xs - xa) * vx + (ys - ya) * vy) / (vx * vx + vy * vy)).clamp(0, 1)
        dist = torch.hypot(xs - (xa + t * vx), ys - (ya + t * vy))

        patch = image[y0:y1, x0:x1]
        patch[dist <= half_width] = defaults.SIM_LINE_INTENSITY


def procedural_texture(
    width: int, height: int, seed: int, dtype: torch.dtype = torch.double
) -> Tensor:
    """
    All-in-focus texture: three octaves of value noise in [0.3, 0.8] with
    dark line segments of 2 to 3 pixels width, spread evenly over the cells of
    the plane layout grid.

    Parameters
    ----------
    width : int
        Width in pixels.
    height : int
        Height in pixels.
    seed : int
        Seed of the texture.
    dtype : torch.dtype, optional
        Floating point precision. Defaults to `torch.double`.

    Returns
    -------
    Tensor
        Texture of shape `(height, width)`.
    """
    noise = _value_noise(SplitMix64(seed, TEXTURE_STREAM), width, height, dtype)
    texture = 0.3 + 0.5 * noise
    _draw_lines(texture, SplitMix64(seed, LINE_STREAM))
    return texture


def _dirt_alpha(spec: SceneSpec, dtype: torch.dtype) -> Tensor:
    assert spec.dirt is not None
    rng = SplitMix64(spec.seed, DIRT_STREAM)

    ys, xs = torch.meshgrid(
        torch.arange(spec.height, dtype=dtype),
        torch.arange(spec.width, dtype=dtype),
        indexing="ij",
    )
    alpha = torch.zeros((spec.height, spec.width), dtype=dtype)
    for u, v in rng.random((spec.dirt.blob_count, 2)).tolist():
        cx, cy = u * (spec.width - 1), v * (spec.height - 1)
        blob = torch.hypot(xs - cx, ys - cy) <= spec.dirt.blob_radius
        alpha = torch.where(blob, torch.ones_like(alpha), alpha)
    return alpha


def focus_margin(blur_slope: float, n_frames: int) -> int:
    """
    Frames around a plane whose blur sigma stays at or below 1 pixel.
    """
    if blur_slope <= 0.0:
        return n_frames
    return int(math.floor(defaults.SIM_FOCUS_SIGMA / blur_slope + 1e-9))


def generate_scene(
    spec: SceneSpec,
    device: Optional[torch.device] = None,
    dtype: torch.dtype = torch.double,
) -> SceneTruth:
    """
    Generate the ground truth of a scene. Equal seeds give bit-identical
    scenes.

    Parameters
    ----------
    spec : SceneSpec
        Validated scene description.
    device : Optional[torch.device], optional
        Device of the images. Defaults to `None`.
    dtype : torch.dtype, optional
        Floating point precision. Defaults to `torch.double`.

    Returns
    -------
    SceneTruth
        All-in-focus image and frame metadata.

    Example
    -------
    >>> spec = SceneSpec.layered(64, 48, [10, 50, 90], 120)
    >>> generate_scene(spec).focused_segment
    (8, 92)
    """
    texture = procedural_texture(spec.width, spec.height, spec.seed, dtype)

    depth = torch.empty((spec.height, spec.width), dtype=torch.long)
    for plane in spec.planes:
        x, y, w, h = plane.region
        depth[y : y + h, x : x + w] = plane.z_index

    g = spec.group
    zs = [p.z_index for p in spec.planes]
    s = focus_margin(spec.blur_slope, spec.n_frames)
    lo = max(0, min(zs) - s)
    hi = min(spec.n_frames - 1, max(zs) + s)

    alpha = None
    dirt_frames: List[int] = []
    if spec.dirt is not None:
        alpha = _dirt_alpha(spec, dtype).to(device)
        dz = spec.dirt.z_index
        dirt_frames = list(range(dz * g, dz * g + g))

    return SceneTruth(
        all_in_focus=texture.to(device),
        depth_map=depth.to(device),
        plane_best=[z * g for z in zs],
        focused_segment=(lo * g, hi * g + g - 1),
        dirt_frames=dirt_frames,
        dirt_alpha=alpha,
        n_frames=spec.n_output,
    )
