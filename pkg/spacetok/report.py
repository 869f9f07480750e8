#
# Copyright (C) 2026 The spacetok Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Machine-readable results of training, evaluation and analysis runs."""
from __future__ import annotations

import json
from collections.abc import Iterator
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Optional

from spacetok.datasets import IngestStats
from spacetok.morphoeval import EvalReport, average_f1
from spacetok.vocabstats import SequenceLength


def write_json(data: Any, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as report_file:
        json.dump(data, report_file, indent=2, ensure_ascii=False, sort_keys=True)
        report_file.write("\n")


@dataclass(frozen=True)
class TrainingReport:
    algorithm: str
    mode: str
    requested_vocab_size: int
    vocab_size: int
    entries: int
    sentences: int
    pretokens: int
    characters: int
    seconds: float

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class DatasetResult:
    """The evaluation of one model on one dataset."""

    name: str
    format: str
    ingest: IngestStats
    report: EvalReport
    subset: Optional[str] = None

    def as_dict(self) -> dict[str, Any]:
        ingest = asdict(self.ingest)
        del ingest["malformed_lines"]
        return {
            "name": self.name,
            "format": self.format,
            "subset": self.subset,
            "ingest": ingest,
            **self.report.as_dict(),
        }


class Report:
    """Stores the results of an evaluation run over several datasets."""

    def __init__(self, model: str) -> None:
        self.model = model
        self.results: list[DatasetResult] = []

    def add_result(self, result: DatasetResult) -> None:
        self.results.append(result)

    def __iter__(self) -> Iterator[DatasetResult]:
        return iter(self.results)

    @property
    def num_datasets(self) -> int:
        return len(self.results)

    @property
    def average_f1(self) -> float:
        return average_f1(r.report for r in self.results)

    def as_dict(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "datasets": [r.as_dict() for r in self.results],
            "average_f1": self.average_f1,
        }


@dataclass(frozen=True)
class VocabAnalysis:
    """Statistics of one model's vocabulary."""

    model: str
    algorithm: str
    mode: str
    vocab_size: int
    deduplicated_size: int
    degeneracy: float
    duplicates: int
    prefixes: Optional[int] = None
    suffixes: Optional[int] = None
    sequence_length: Optional[SequenceLength] = None

    def as_dict(self) -> dict[str, Any]:
        result = asdict(self)
        if self.sequence_length is not None:
            result["sequence_length"] = self.sequence_length.as_dict()
        return result


@dataclass(frozen=True)
class PairAnalysis:
    """How an attached-mode vocabulary carries over to an isolated one."""

    default_model: str
    modified_model: str
    overlap: float
    converse_overlap: float
    unique_default: int
    unique_modified: int

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)
