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
Command line
============

The ``tad-zstack`` command with the subcommands

- ``simulate <spec.json> <out_dir>``: render a synthetic scene
- ``fast-search <stack_dir>``: focused segment of a stack
- ``coverage <stack_dir>``: full focus coverage, optionally exported
- ``stack <frames...>``: all-in-focus image
- ``pipeline <config.json>``: configured chain of the above
- ``bench <suite>``: benchmark suites

Example
-------
>>> from tad_zstack.cli import cli_main
>>> cli_main([])
2
"""
from .argparser import *
from .entrypoint import *
