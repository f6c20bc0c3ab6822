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
Image core: I/O
===============

Reading and writing of grayscale frames. Directories of PGM or PNG images are
loaded as :class:`~tad_zstack.imgcore.frame.ZStack`, with the lexicographic
file order defining the z-order. Color images are converted to gray with the
BT.601 luma weights. Output frames are quantized to 8 bit by rounding to the
nearest level.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import torch
from PIL import Image, UnidentifiedImageError

from .. import defaults
from ..exception import DimensionMismatchError, EmptyStackError
from ..typing import Tensor
from .frame import ZStack, check_frame

__all__ = [
    "read_image",
    "write_image",
    "write_pgm",
    "write_png",
    "load_stack",
    "save_stack",
    "to_uint8",
]

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_image(
    path: PathLike,
    device: Optional[torch.device] = None,
    dtype: torch.dtype = torch.double,
) -> Tensor:
    """
    Read a single image as a normalized grayscale frame.

    Parameters
    ----------
    path : PathLike
        Image file (any format Pillow can decode, PGM and PNG in practice).
    device : Optional[torch.device], optional
        Device of the frame. Defaults to `None`.
    dtype : torch.dtype, optional
        Floating point precision of the frame. Defaults to `torch.double`.

    Returns
    -------
    Tensor
        Frame of shape `(h, w)` with intensities in [0, 1].
    """
    with Image.open(path) as img:
        img.load()
        mode = img.mode

        if mode in ("I;16", "I;16B", "I;16L", "I"):
            data = np.asarray(img, dtype=np.float64) / 65535.0
        elif mode == "F":
            data = np.asarray(img, dtype=np.float64)
        elif mode == "L":
            data = np.asarray(img, dtype=np.float64) / 255.0
        elif mode in ("1", "LA"):
            data = np.asarray(img.convert("L"), dtype=np.float64) / 255.0
        else:
            rgb = np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0
            data = rgb @ np.asarray(defaults.GRAY_WEIGHTS, dtype=np.float64)

    frame = torch.from_numpy(np.clip(data, 0.0, 1.0)).to(device=device, dtype=dtype)
    return frame


def to_uint8(frame: Tensor) -> np.ndarray:
    """
    Quantize a frame to 8 bit with round-to-nearest.

    Parameters
    ----------
    frame : Tensor
        Frame with intensities in [0, 1].

    Returns
    -------
    np.ndarray
        Array of dtype `uint8`.
    """
    levels = torch.round(frame.detach().clamp(0.0, 1.0) * 255.0)
    return levels.cpu().numpy().astype(np.uint8)


def write_pgm(frame: Tensor, path: PathLike) -> Path:
    """
    Write a frame as binary 8-bit PGM (P5).

    Parameters
    ----------
    frame : Tensor
        Frame of shape `(h, w)`.
    path : PathLike
        Output file.

    Returns
    -------
    Path
        The written file.
    """
    check_frame(frame)
    out = Path(path)
    Image.fromarray(to_uint8(frame)).save(out, format="PPM")
    return out


def write_png(frame: Tensor, path: PathLike) -> Path:
    """
    Write a frame as 8-bit grayscale PNG.
    """
    check_frame(frame)
    out = Path(path)
    Image.fromarray(to_uint8(frame)).save(out, format="PNG")
    return out


def write_image(frame: Tensor, path: PathLike) -> Path:
    """
    Write a frame as PNG if the suffix asks for it, as PGM otherwise.
    """
    if Path(path).suffix.lower() == ".png":
        return write_png(frame, path)
    return write_pgm(frame, path)


def load_stack(
    directory: PathLike,
    stride: int = 1,
    device: Optional[torch.device] = None,
    dtype: torch.dtype = torch.double,
) -> ZStack:
    """
    Load all PGM and PNG images of a directory as Z-stack.

    Parameters
    ----------
    directory : PathLike
        Directory with one image per frame. The sorted file names define the
        z-order.
    stride : int, optional
        Z-step between frames in motor steps. Defaults to `1`.
    device : Optional[torch.device], optional
        Device of the frames. Defaults to `None`.
    dtype : torch.dtype, optional
        Floating point precision of the frames. Defaults to `torch.double`.

    Returns
    -------
    ZStack
        Stack in sorted-name order.

    Raises
    ------
    FileNotFoundError
        If the directory does not exist.
    EmptyStackError
        If the directory holds no readable image.
    DimensionMismatchError
        If the images differ in size. The message names the offending file.
    """
    folder = Path(directory)
    if not folder.is_dir():
        raise FileNotFoundError(f"Stack directory '{folder}' does not exist.")

    files = sorted(
        p
        for p in folder.iterdir()
        if p.is_file() and p.suffix.lower() in defaults.IMAGE_SUFFIXES
    )

    frames = []
    names = []
    for file in files:
        try:
            frame = read_image(file, device=device, dtype=dtype)
        except (UnidentifiedImageError, OSError) as e:
            logger.warning("Skipping unreadable image '%s': %s", file.name, e)
            continue

        if frames and frame.shape != frames[0].shape:
            raise DimensionMismatchError(
                f"Image '{file.name}' has size {frame.shape[1]}x{frame.shape[0]}"
                f", expected {frames[0].shape[1]}x{frames[0].shape[0]}."
            )

        frames.append(frame)
        names.append(file.name)

    if len(frames) == 0:
        raise EmptyStackError(f"No readable images found in '{folder}'.")

    logger.info("Loaded %d frames from '%s'.", len(frames), folder)
    return ZStack(torch.stack(frames), stride=stride, names=names)


def save_stack(
    stack: ZStack, directory: PathLike, suffix: str = ".pgm", digits: int = 4
) -> List[Path]:
    """
    Write every frame of a stack as numbered image.

    Parameters
    ----------
    stack : ZStack
        Stack to write.
    directory : PathLike
        Output directory, created if missing.
    suffix : str, optional
        File suffix, `".pgm"` or `".png"`. Defaults to `".pgm"`.
    digits : int, optional
        Zero padding of the frame number. Defaults to `4`.

    Returns
    -------
    List[Path]
        The written files in frame order.
    """
    folder = Path(directory)
    folder.mkdir(parents=True, exist_ok=True)

    width = max(digits, len(str(len(stack))))
    return [
        write_image(stack[i], folder / f"{i:0{width}d}{suffix}")
        for i in range(len(stack))
    ]
