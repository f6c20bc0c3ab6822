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
Defaults
========

This module defines the default values for all parameters of the Z-stack
processing toolkit. Every value can be overridden through the corresponding
function argument or configuration object.
"""

__all__ = [
    "MIN_FRAME_SIZE",
    "GRAY_WEIGHTS",
    "IMAGE_SUFFIXES",
    "GRID_ROWS",
    "GRID_COLS",
    "SECTOR_MASKED_FRACTION",
    "SMOOTH_DIVISOR",
    "SMOOTH_MIN_WINDOW",
    "BIN_SEARCH_MAXITER",
    "BIN_SEARCH_RTOL",
    "FLAT_RTOL",
    "RUNNER_UP_RATIO",
    "SEGMENT_REL_HEIGHT",
    "SEGMENT_MERGE_RATIO",
    "COARSE_STRIDE",
    "DARK_THRESHOLD",
    "DUP_MAD_THRESHOLD",
    "BLUR_RATIO",
    "DIRT_PROM_RATIO",
    "DIRT_DIST_RATIO",
    "DIRT_REL_HEIGHT",
    "PIXEL_WINDOW",
    "NEIGHBOR_BLOCK",
    "MEDIAN_WINDOW",
    "WAVELET_LEVELS",
    "SIM_BLUR_SLOPE",
    "SIM_IDENTITY_SIGMA",
    "SIM_TRUNCATE",
    "SIM_FOCUS_SIGMA",
    "SIM_DIRT_DARKENING",
    "SIM_LINE_AREA",
    "SIM_LINE_INTENSITY",
    "SIM_LAYOUT_CELLS",
    "BENCH_REPEATS",
    "BENCH_WARMUP",
    "CI_Z",
    "THREADS_ENV",
]

# frames and images

MIN_FRAME_SIZE = 3
"""Smallest admissible frame side in pixels (3)."""

GRAY_WEIGHTS = (0.299, 0.587, 0.114)
"""BT.601 luma weights for RGB to grayscale conversion."""

IMAGE_SUFFIXES = (".pgm", ".png")
"""File suffixes recognized when loading a stack directory."""

# sectors

GRID_ROWS = 4
"""Default number of sector rows for coverage work (4)."""

GRID_COLS = 4
"""Default number of sector columns for coverage work (4)."""

SECTOR_MASKED_FRACTION = 0.5
"""A sector is invalid if strictly more than this fraction is masked (0.5)."""

# peak search

SMOOTH_DIVISOR = 20
"""Default smoothing window is the curve length divided by this value (20)."""

SMOOTH_MIN_WINDOW = 3
"""Lower bound for the default smoothing window (3)."""

BIN_SEARCH_MAXITER = 64
"""Iteration cap of the prominence binary search (64)."""

BIN_SEARCH_RTOL = 1e-12
"""Relative interval width that terminates the binary search (1e-12)."""

FLAT_RTOL = 1e-12
"""Curves with a relative value span below this are considered flat (1e-12)."""

RUNNER_UP_RATIO = 0.8
"""Runner-up to winner prominence ratio that flags a segment as ambiguous."""

SEGMENT_REL_HEIGHT = 0.8
"""Fraction of the prominence at which segment bases are placed (0.8)."""

SEGMENT_MERGE_RATIO = 0.1
"""Peaks above this fraction of the winner's prominence join the segment (0.1)."""

COARSE_STRIDE = 8
"""Frame stride of the coarse scan in the two-pass strategy (8)."""

# coverage

DARK_THRESHOLD = 0.04
"""Intensity below which a pixel belongs to the dark-corner mask (0.04)."""

DUP_MAD_THRESHOLD = 0.02
"""Mean absolute difference at or below which frames are duplicates (0.02)."""

BLUR_RATIO = 0.2
"""Frames with FM below this fraction of the maximum are blurred (0.2)."""

DIRT_PROM_RATIO = 0.3
"""Dirt peaks have less than this fraction of the main prominence (0.3)."""

DIRT_DIST_RATIO = 1.5
"""Dirt peaks lie farther than this multiple of the main peak width (1.5)."""

DIRT_REL_HEIGHT = 0.5
"""Fraction of the prominence at which the dirt rule places peak spans (0.5)."""

# stacking

PIXEL_WINDOW = 9
"""Window of the per-pixel TENG focus map (9)."""

NEIGHBOR_BLOCK = 16
"""Tile size of the neighbor-based stacking (16)."""

MEDIAN_WINDOW = 3
"""Median filter window on the tile label map (3)."""

WAVELET_LEVELS = 4
"""Number of Haar decomposition levels (4)."""

# synthetic scenes

SIM_BLUR_SLOPE = 0.5
"""Gaussian sigma (pixels) added per frame of defocus (0.5)."""

SIM_IDENTITY_SIGMA = 0.3
"""Sigma below which the defocus blur is skipped (0.3)."""

SIM_TRUNCATE = 3.0
"""Gaussian kernels are truncated at this many sigma (3.0)."""

SIM_FOCUS_SIGMA = 1.0
"""Largest sigma still counted as in focus for the ground-truth segment (1.0)."""

SIM_DIRT_DARKENING = 0.6
"""Fraction of intensity absorbed under a sharp dirt blob (0.6)."""

SIM_LINE_AREA = 300
"""Frame area in pixels per procedural line segment (300)."""

SIM_LINE_INTENSITY = 0.08
"""Intensity of the procedural line segments (0.08)."""

SIM_LAYOUT_CELLS = 4
"""Plane regions are unions of cells of a 4x4 layout, aligned with the
default sector grid."""

# benchmarks and runtime

BENCH_REPEATS = 30
"""Minimum number of timed repetitions (30)."""

BENCH_WARMUP = 3
"""Number of untimed warm-up runs (3)."""

CI_Z = 1.96
"""Normal quantile of the 95% confidence interval (1.96)."""

THREADS_ENV = "ZSTACK_THREADS"
"""Environment variable overriding the torch thread count."""
