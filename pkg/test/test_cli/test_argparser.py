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
Test the argument parser.
"""
import pytest

from tad_zstack.cli import parser


def test_defaults() -> None:
    args = parser().parse_args(["coverage", "frames"])

    assert args.command == "coverage"
    assert args.method == "parts"
    assert args.grid == "4x4"
    assert args.op == "teng"
    assert args.report is None
    assert args.verbose == 0


def test_common_options() -> None:
    args = parser().parse_args(
        ["fast-search", "frames", "-vv", "--threads", "2", "--report", "out.json"]
    )

    assert args.verbose == 2
    assert args.threads == 2
    assert args.report == "out.json"
    assert args.op == "voll4"


def test_fast_search_options() -> None:
    args = parser().parse_args(["fast-search", "frames"])
    assert args.merge_ratio == pytest.approx(0.1)
    assert args.rel_height == pytest.approx(0.8)

    args = parser().parse_args(["fast-search", "frames", "--merge-ratio", "0.5"])
    assert args.merge_ratio == pytest.approx(0.5)


def test_stack_frames() -> None:
    args = parser().parse_args(["stack", "a.pgm", "b.pgm", "--method", "pixel"])
    assert args.frames == ["a.pgm", "b.pgm"]
    assert args.levels is None


@pytest.mark.parametrize(
    "argv",
    [
        ["fast-search", "frames", "--op", "sobel"],
        ["fast-search", "frames", "--smooth", "0"],
        ["coverage", "frames", "--method", "all"],
        ["stack", "--method", "pixel"],
        ["bench", "nothing"],
        ["pipeline", "cfg.json", "--threads", "two"],
    ],
)
def test_invalid(argv: list) -> None:
    with pytest.raises(SystemExit) as exc:
        parser().parse_args(argv)
    assert exc.value.code == 2
