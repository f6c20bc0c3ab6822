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
Exceptions
==========

Possible exceptions which can be raised by this module.

Errors that describe invalid input additionally derive from :class:`ValueError`
so that callers validating arguments can catch either.
"""
from __future__ import annotations

from typing import Any, Optional

__all__ = [
    "ZStackError",
    "DimensionMismatchError",
    "EmptyStackError",
    "NoPeakError",
    "InvalidPeakError",
    "EmptyCoverageError",
    "ConfigError",
    "StageError",
]


class ZStackError(Exception):
    """
    Base class for exceptions raised by this module.
    """

    pass


class DimensionMismatchError(ZStackError, ValueError):
    """
    Frames, masks or stacks with incompatible shapes were combined.
    """

    pass


class EmptyStackError(ZStackError, ValueError):
    """
    An operation received a stack without frames.
    """

    pass


class NoPeakError(ZStackError):
    """
    The focal curve carries no usable peak (flat or monotone curve).
    """

    pass


class InvalidPeakError(ZStackError):
    """
    A peak cannot be mapped back onto the original stack.
    """

    pass


class EmptyCoverageError(ZStackError):
    """
    No frame survived the selection, e.g., every sector is masked as dark.
    """

    pass


class ConfigError(ZStackError, ValueError):
    """
    A configuration file or object is invalid.
    """

    pass


class StageError(ZStackError):
    """
    A pipeline stage failed.

    The name of the failing stage and the partially filled run report are
    attached to the exception.
    """

    def __init__(
        self, stage: str, cause: BaseException, report: Optional[Any] = None
    ) -> None:
        super().__init__(f"Stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
        self.report = report
