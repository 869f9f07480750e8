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
"""Human-readable output of run results."""
from __future__ import annotations

import os
import sys
from collections.abc import Sequence
from typing import Optional, TextIO

from spacetok.report import PairAnalysis, Report, TrainingReport, VocabAnalysis

_COLORS = {
    "green": "\033[92m",
    "red": "\033[91m",
    "yellow": "\033[93m",
}
_END_COLOR = "\033[0m"


def maybe_color(text: str, color: str, do_color: bool) -> str:
    """Returns text wrapped in ANSI color codes if do_color is set."""
    return _COLORS[color] + text + _END_COLOR if do_color else text


def _percent(ratio: float) -> str:
    return f"{100 * ratio:.1f}%"


class FilePrinter:
    def __init__(self, to_file: TextIO, use_color: Optional[bool] = None) -> None:
        self.file = to_file
        if use_color is None:
            self.use_color = to_file.isatty() and os.name != "nt"
        else:
            self.use_color = use_color

    def _print(self, text: str = "") -> None:
        print(text, file=self.file)

    def print_training(self, report: TrainingReport) -> None:
        self._print(
            f"{report.algorithm} ({report.mode}): {report.vocab_size} tokens "
            f"of {report.requested_vocab_size} requested, {report.entries} entries, "
            f"{report.pretokens} pretokens in {report.sentences} sentences, "
            f"{report.seconds:.1f}s"
        )
        if report.vocab_size < report.requested_vocab_size:
            self._print(
                maybe_color(
                    "Training stopped early: no pair or piece left to add.",
                    "yellow",
                    self.use_color,
                )
            )

    def print_evaluation(self, report: Report) -> None:
        self._print(
            f"{'dataset':<24} {'records':>8} {'length':>7} "
            f"{'P':>6} {'R':>6} {'F1':>6}"
        )
        for result in report:
            scores = result.report
            name = (
                result.name
                if result.subset is None
                else f"{result.name} [{result.subset}]"
            )
            self._print(
                f"{name:<24} {scores.n_records:>8} "
                f"{scores.mean_sequence_length:>7.3f} {scores.precision:>6.1f} "
                f"{scores.recall:>6.1f} {scores.f1:>6.1f}"
            )
            if result.ingest.dropped:
                self._print(
                    maybe_color(
                        f"  dropped {result.ingest.dropped} of "
                        f"{result.ingest.rows} rows",
                        "yellow",
                        self.use_color,
                    )
                )
        if report.num_datasets > 1:
            self._print(
                maybe_color(
                    f"average F1 {report.average_f1:.1f}", "green", self.use_color
                )
            )

    def print_analysis(
        self, rows: Sequence[VocabAnalysis], pair: Optional[PairAnalysis]
    ) -> None:
        for row in rows:
            self._print(f"{row.model}: {row.algorithm} ({row.mode})")
            self._print(f"  vocab size      {row.vocab_size}")
            self._print(f"  deduplicated    {row.deduplicated_size}")
            self._print(
                f"  degeneracy      {_percent(row.degeneracy)} ({row.duplicates} pairs)"
            )
            if row.prefixes is not None and row.suffixes is not None:
                self._print(f"  prefixes        {row.prefixes}")
                self._print(f"  suffixes        {row.suffixes}")
            length = row.sequence_length
            if length is not None:
                self._print(
                    f"  corpus tokens   {length.tokens} in {length.sentences} sentences"
                )
                self._print(
                    f"  per sentence    {length.per_sentence:.3f}"
                    f" ({length.per_sentence_without_spaces:.3f} without spaces)"
                )
        if pair is not None:
            self._print(f"{pair.default_model} -> {pair.modified_model}")
            self._print(f"  overlap         {_percent(pair.overlap)}")
            self._print(f"  converse        {_percent(pair.converse_overlap)}")
            self._print(f"  unique default  {pair.unique_default}")
            self._print(f"  unique modified {pair.unique_modified}")

    def print_comparison(
        self, models: Sequence[str], rows: Sequence[tuple[str, Sequence[str]]]
    ) -> None:
        """Prints one line per word with each model's tokens in a column."""
        widths = [len(m) for m in models]
        for _, columns in rows:
            widths = [max(w, len(c)) for w, c in zip(widths, columns)]
        word_width = max([len("word")] + [len(word) for word, _ in rows])
        header = "  ".join(m.ljust(w) for m, w in zip(models, widths))
        self._print(f"{'word'.ljust(word_width)}  {header}".rstrip())
        for word, columns in rows:
            cells = "  ".join(c.ljust(w) for c, w in zip(columns, widths))
            self._print(f"{word.ljust(word_width)}  {cells}".rstrip())


class StdoutPrinter(FilePrinter):
    def __init__(self, use_color: Optional[bool] = None) -> None:
        super().__init__(sys.stdout, use_color)
