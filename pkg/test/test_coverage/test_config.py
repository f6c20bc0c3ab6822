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
Test the coverage configuration and result containers.
"""
import pytest

from tad_zstack.coverage import (
    AuditRecord,
    CoverageConfig,
    CoverageResult,
    SelectionMethod,
)
from tad_zstack.exception import ConfigError, ZStackError
from tad_zstack.measure import FMOperator, SectorGrid


def test_defaults() -> None:
    cfg = CoverageConfig()

    assert cfg.grid == SectorGrid(4, 4)
    assert cfg.operator == FMOperator.TENG
    assert cfg.method == SelectionMethod.PARTS
    assert pytest.approx(0.04) == cfg.dark_threshold
    assert pytest.approx(0.02) == cfg.dup_mad_threshold
    assert pytest.approx(0.2) == cfg.blur_ratio
    assert pytest.approx(0.3) == cfg.dirt_prom_ratio
    assert pytest.approx(1.5) == cfg.dirt_dist_ratio


def test_from_dict() -> None:
    data = {"grid": "3x2", "method": "BEST3", "operator": "lapm"}
    cfg = CoverageConfig.from_dict(data)
    assert cfg.grid == SectorGrid(3, 2)
    assert cfg.method == SelectionMethod.BEST3
    assert cfg.operator == FMOperator.LAPM

    assert CoverageConfig.from_dict({"grid": [2, 5]}).grid == SectorGrid(2, 5)
    assert CoverageConfig.from_dict(cfg.to_dict()) == cfg


@pytest.mark.parametrize(
    "data",
    [
        {"unknown": 1},
        {"method": "best5"},
        {"dark_threshold": 0.0},
        {"dup_mad_threshold": 1.5},
        {"blur_ratio": -0.1},
        {"dirt_prom_ratio": 0.0},
        {"dirt_dist_ratio": 0.0},
        {"dirt_rel_height": 2.0},
    ],
)
def test_config_fail(data: dict) -> None:
    with pytest.raises(ConfigError):
        CoverageConfig.from_dict(data)


def test_audit_record() -> None:
    assert AuditRecord(4, "dup_of:2").duplicate_of == 2
    assert AuditRecord(4, "kept").duplicate_of == -1

    with pytest.raises(ValueError):
        AuditRecord(1, "lost")


def test_result() -> None:
    result = CoverageResult(
        selected=[3, 12],
        audit=[
            AuditRecord(3, "kept"),
            AuditRecord(4, "dup_of:3"),
            AuditRecord(7, "dirt"),
            AuditRecord(9, "dup_of:12"),
            AuditRecord(12, "kept"),
        ],
        sector_owner=[[3, 3], [12, -1]],
    )

    assert result.reasons()[7] == "dirt"
    assert result.dropped("dup_of") == [4, 9]
    assert result.dropped("blurred") == []

    summary = result.summary()
    assert summary["selected"] == [3, 12]
    assert summary["counts"] == {
        "kept": 2,
        "dup_of": 2,
        "blurred": 0,
        "dirt": 1,
        "dark": 0,
    }

    assert CoverageResult.from_json(result.to_json()) == result
    assert result.to_dict()["audit"][1] == {"index": 4, "reason": "dup_of:3"}


def test_result_fail() -> None:
    with pytest.raises(ValueError):
        CoverageResult(selected=[3, 3])

    with pytest.raises(ValueError):
        CoverageResult(selected=[5, 2])

    with pytest.raises(ZStackError):
        CoverageResult.from_dict({"audit": []})
