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
Command line: Parser
====================

Argument parser of the ``tad-zstack`` command. Options shared by all
subcommands (verbosity, threads, report file) are accepted after the
subcommand name.
"""
from __future__ import annotations

import argparse

from .. import defaults
from ..__version__ import __version__
from ..bench.suites import SUITES
from ..coverage import SelectionMethod
from ..measure.operators import FMOperator
from ..stacking import StackMethod

__all__ = ["parser"]


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"'{value}' is not an integer.") from e
    if number < 1:
        raise argparse.ArgumentTypeError(f"Expected a positive integer, got {value}.")
    return number


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase verbosity (INFO, DEBUG with -vv).",
    )
    common.add_argument(
        "--quiet", action="store_true", help="Only report errors."
    )
    common.add_argument(
        "--threads",
        type=_positive_int,
        default=None,
        help=(
            "Number of torch threads. Defaults to the environment variable "
            f"{defaults.THREADS_ENV}; benchmarks use one thread by default."
        ),
    )
    common.add_argument(
        "--report",
        metavar="PATH",
        default=None,
        help="Write the JSON result to PATH instead of standard output.",
    )
    return common


def parser(name: str = "tad-zstack") -> argparse.ArgumentParser:
    """
    Parser of the command line.

    Parameters
    ----------
    name : str, optional
        Program name. Defaults to `"tad-zstack"`.

    Returns
    -------
    argparse.ArgumentParser
        Parser with one subparser per command.
    """
    common = _common()
    ops = [op.value for op in FMOperator]

    p = argparse.ArgumentParser(
        prog=name,
        description="Focus search, full focus coverage and stacking of Z-stacks.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    # simulate
    sim = sub.add_parser(
        "simulate", parents=[common], help="Render a synthetic scene."
    )
    sim.add_argument("spec", help="JSON scene description.")
    sim.add_argument("out_dir", help="Directory for frames and ground truth.")
    sim.add_argument(
        "--stride", type=_positive_int, default=1, help="Render every N-th frame."
    )
    sim.add_argument("--png", action="store_true", help="Write PNG frames.")

    # fast-search
    fs = sub.add_parser(
        "fast-search", parents=[common], help="Find the focused segment of a stack."
    )
    fs.add_argument("stack_dir", help="Directory with the (coarse) frames.")
    fs.add_argument("--op", choices=ops, default=FMOperator.VOLL4.value)
    fs.add_argument(
        "--smooth", type=_positive_int, default=None, help="Odd smoothing window."
    )
    fs.add_argument(
        "--rel-height",
        type=float,
        default=defaults.SEGMENT_REL_HEIGHT,
        help="Base level as fraction of the prominence.",
    )
    fs.add_argument(
        "--merge-ratio",
        type=float,
        default=defaults.SEGMENT_MERGE_RATIO,
        help="Merge further peaks above this fraction of the winner's prominence.",
    )
    fs.add_argument(
        "--stride", type=_positive_int, default=1, help="Z-step of the frames."
    )
    fs.add_argument(
        "--downscale", metavar="WxH", default=None, help="Evaluate on smaller frames."
    )

    # coverage
    cov = sub.add_parser(
        "coverage", parents=[common], help="Extract the full focus coverage."
    )
    cov.add_argument("stack_dir", help="Directory with the frames.")
    cov.add_argument(
        "--method",
        choices=[m.value for m in SelectionMethod],
        default=SelectionMethod.PARTS.value,
    )
    cov.add_argument("--grid", metavar="RxC", default="4x4")
    cov.add_argument("--op", choices=ops, default=FMOperator.TENG.value)
    cov.add_argument("--dark-threshold", type=float, default=defaults.DARK_THRESHOLD)
    cov.add_argument(
        "--dup-threshold", type=float, default=defaults.DUP_MAD_THRESHOLD
    )
    cov.add_argument("--blur-ratio", type=float, default=defaults.BLUR_RATIO)
    cov.add_argument(
        "--export", metavar="DIR", default=None, help="Copy the selected frames."
    )

    # stack
    st = sub.add_parser(
        "stack", parents=[common], help="Fuse frames into an all-in-focus image."
    )
    st.add_argument(
        "frames", nargs="+", help="Frame files or a single directory of frames."
    )
    st.add_argument(
        "--method",
        choices=[m.value for m in StackMethod],
        default=StackMethod.WAVELET.value,
    )
    st.add_argument("-o", "--output", default="fused.pgm", help="Fused image.")
    st.add_argument("--labels", default=None, help="Label map (pixel, neighbor).")
    st.add_argument("--window", type=_positive_int, default=None)
    st.add_argument("--block", type=_positive_int, default=None)
    st.add_argument("--levels", type=_positive_int, default=None)

    # pipeline
    pl = sub.add_parser(
        "pipeline", parents=[common], help="Run a configured pipeline."
    )
    pl.add_argument("config", help="JSON pipeline configuration.")

    # bench
    bench = sub.add_parser("bench", parents=[common], help="Run a benchmark suite.")
    bench.add_argument("suite", choices=list(SUITES))
    bench.add_argument(
        "--resolutions", default=None, help="Comma separated list of WxH."
    )
    bench.add_argument("--repeats", type=_positive_int, default=None)
    bench.add_argument("--count", type=int, default=None, help="Number of scenes.")
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--stride", type=_positive_int, default=None)

    return p
