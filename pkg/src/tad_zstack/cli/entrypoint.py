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
Command line: Entry point
=========================

Dispatch of the subcommands. Results are printed as JSON to standard output
or written to the file given with ``--report``.

Exit codes are `0` on success, `1` on errors of the computation or the
input data, and `2` on usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import shutil
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

import torch

from .. import defaults
from ..bench.operators import parse_resolution
from ..bench.suites import run_suite
from ..coverage import CoverageConfig, full_focus_coverage
from ..exception import StageError, ZStackError
from ..imgcore.frame import ZStack
from ..imgcore.io import load_stack, read_image, write_image, write_pgm
from ..peaks.search import fast_search
from ..pipeline import PipelineConfig, run_pipeline
from ..simsynth import SceneSpec, save_scene, simulate
from ..stacking import stack_frames
from .argparser import parser

__all__ = ["cli_main", "console_entry_point"]

logger = logging.getLogger(__name__)


@contextmanager
def _console_logging(args: argparse.Namespace) -> Iterator[None]:
    if args.quiet:
        level = logging.ERROR
    else:
        level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler.setLevel(level)

    root = logging.getLogger("tad_zstack")
    previous = root.level
    root.addHandler(handler)
    root.setLevel(min(level, previous) if previous else level)
    try:
        yield
    finally:
        root.removeHandler(handler)
        root.setLevel(previous)


def _threads(args: argparse.Namespace) -> Optional[int]:
    if args.threads is not None:
        return args.threads

    env = os.environ.get(defaults.THREADS_ENV)
    if env is None:
        return None
    try:
        value = int(env)
    except ValueError as e:
        raise ValueError(
            f"{defaults.THREADS_ENV} must be a positive integer, got '{env}'."
        ) from e
    if value < 1:
        raise ValueError(f"{defaults.THREADS_ENV} must be positive, got {value}.")
    return value


def _simulate(args: argparse.Namespace) -> Dict[str, Any]:
    spec = SceneSpec.from_json(Path(args.spec).read_text())
    stack, truth = simulate(spec, stride=args.stride)
    folder = save_scene(
        stack, truth, args.out_dir, suffix=".png" if args.png else ".pgm"
    )
    return {
        "directory": str(folder),
        "frames": len(stack),
        "stride": stack.stride,
        "truth": truth.to_dict(),
    }


def _fast_search(args: argparse.Namespace) -> Dict[str, Any]:
    stack = load_stack(args.stack_dir, stride=args.stride)
    segment = fast_search(
        stack,
        op=args.op,
        smooth_window=args.smooth,
        rel_height=args.rel_height,
        merge_ratio=args.merge_ratio,
        downscale_to=parse_resolution(args.downscale) if args.downscale else None,
    )
    return {"segment": segment.to_dict()}


def _coverage(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = CoverageConfig.from_dict(
        {
            "grid": args.grid,
            "operator": args.op,
            "method": args.method,
            "dark_threshold": args.dark_threshold,
            "dup_mad_threshold": args.dup_threshold,
            "blur_ratio": args.blur_ratio,
        }
    )
    stack = load_stack(args.stack_dir)
    result = full_focus_coverage(stack, cfg)

    out: Dict[str, Any] = result.to_dict()
    out["files"] = [stack.names[i] for i in result.selected]

    if args.export is not None:
        target = Path(args.export)
        target.mkdir(parents=True, exist_ok=True)
        for name in out["files"]:
            shutil.copy2(Path(args.stack_dir) / name, target / name)
        out["export"] = str(target)
        logger.info("Copied %d frames to '%s'.", len(out["files"]), target)

    return out


def _load_frames(paths: Sequence[str]) -> ZStack:
    if len(paths) == 1 and Path(paths[0]).is_dir():
        return load_stack(paths[0])
    return ZStack([read_image(p) for p in paths], names=[Path(p).name for p in paths])


def _stack(args: argparse.Namespace) -> Dict[str, Any]:
    stack = _load_frames(args.frames)
    kwargs = {
        k: getattr(args, k)
        for k in ("window", "block", "levels")
        if getattr(args, k) is not None
    }

    result = stack_frames(stack, args.method, **kwargs)
    out: Dict[str, Any] = {
        "method": result.method.value,
        "n_frames": result.n_frames,
        "output": str(write_image(result.image, args.output)),
        "label_map": None,
    }
    if args.labels is not None and result.label_map is not None:
        out["label_map"] = str(write_pgm(result.label_frame(), args.labels))

    return out


def _pipeline(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = PipelineConfig.from_file(args.config)
    return run_pipeline(cfg).to_dict()


def _bench(args: argparse.Namespace) -> Dict[str, Any]:
    resolutions = None
    if args.resolutions is not None:
        resolutions = [parse_resolution(r) for r in args.resolutions.split(",")]

    return run_suite(
        args.suite,
        threads=args.threads if args.threads is not None else 1,
        resolutions=resolutions,
        repeats=args.repeats,
        count=args.count,
        seed=args.seed,
        stride=args.stride,
    )


def _run(args: argparse.Namespace) -> int:
    try:
        if args.command != "bench":
            threads = _threads(args)
            if threads is not None:
                torch.set_num_threads(threads)

        result = COMMANDS[args.command](args)
        _emit(result, args.report)
    except StageError as e:
        logger.error("%s", e)
        if e.report is not None:
            _emit(e.report.to_dict(), args.report)
        return 1
    except (ZStackError, ValueError, OSError, MemoryError) as e:
        logger.error("%s: %s", args.command, e)
        return 1

    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    "simulate": _simulate,
    "fast-search": _fast_search,
    "coverage": _coverage,
    "stack": _stack,
    "pipeline": _pipeline,
    "bench": _bench,
}


def _emit(result: Dict[str, Any], report: Optional[str]) -> None:
    text = json.dumps(result, indent=2)
    if report is None:
        print(text)
        return

    path = Path(report)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info("Result written to '%s'.", path)


def cli_main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line.

    Parameters
    ----------
    argv : Optional[List[str]], optional
        Arguments without the program name. Defaults to `sys.argv[1:]`.

    Returns
    -------
    int
        Exit code.
    """
    p = parser()
    argv = sys.argv[1:] if argv is None else list(argv)

    if len(argv) == 0:
        p.print_usage(sys.stderr)
        return 2

    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2

    if args.command is None:
        p.print_usage(sys.stderr)
        return 2

    with _console_logging(args):
        return _run(args)


def console_entry_point() -> int:  # pragma: no cover
    """Entry point of the `tad-zstack` console script."""
    sys.exit(cli_main())
