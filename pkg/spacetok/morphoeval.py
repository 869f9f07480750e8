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
"""Boundary-based evaluation of tokenisers against gold morphology.

A segmentation is compared to the gold parse by its split positions: a
predicted boundary also in the gold parse is a true positive, one that is not
is a false positive, and a gold boundary that was missed is a false negative.
Counts are summed over a dataset before precision, recall and F1 are taken.
"""
from __future__ import annotations

import enum
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass
from itertools import accumulate
from typing import Any, Optional

from spacetok.datasets import MorphRecord
from spacetok.errors import ConfigError
from spacetok.model import SubwordModel
from spacetok.textnorm import DEFAULT_SPACE_SYMBOL, pretokenize_word
from spacetok.vocab import Tokenisation
from spacetok.vocabstats import AffixLexicon
from spacetok.workqueue import BaseWorkQueue, BasicWorkQueue, shard

BoundarySet = frozenset[int]


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


@enum.unique
class AffixSubset(enum.Enum):
    PREFIX = "prefix"
    SUFFIX = "suffix"


@dataclass(frozen=True)
class BoundaryCounts:
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0

    def __add__(self, other: BoundaryCounts) -> BoundaryCounts:
        return BoundaryCounts(
            self.true_positives + other.true_positives,
            self.false_positives + other.false_positives,
            self.false_negatives + other.false_negatives,
        )

    @property
    def precision(self) -> float:
        predicted = self.true_positives + self.false_positives
        return 100.0 * self.true_positives / predicted if predicted else 0.0

    @property
    def recall(self) -> float:
        gold = self.true_positives + self.false_negatives
        return 100.0 * self.true_positives / gold if gold else 0.0

    @property
    def f1(self) -> float:
        return harmonic_mean(self.precision, self.recall)

    @property
    def empty(self) -> bool:
        return self == BoundaryCounts()


def harmonic_mean(precision: float, recall: float) -> float:
    total = precision + recall
    return 2 * precision * recall / total if total else 0.0


@dataclass(frozen=True)
class EvalReport:
    """Scores of one tokeniser on one dataset. Percentages have one decimal."""

    true_positives: int
    false_positives: int
    false_negatives: int
    precision: float
    recall: float
    f1: float
    mean_sequence_length: float
    n_records: int
    macro: bool = False

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def _strip_spaces(seg: Sequence[str], space_symbol: str) -> list[str]:
    pieces = [piece for piece in seg if piece != space_symbol]
    if pieces and pieces[0].startswith(space_symbol):
        pieces[0] = pieces[0][1:]
    return [piece for piece in pieces if piece]


def boundaries(
    seg: Tokenisation | Sequence[str], space_symbol: str = DEFAULT_SPACE_SYMBOL
) -> BoundarySet:
    """Split positions of a segmentation within the bare word.

    Space tokens and the leading space symbol of an attached-mode word are
    removed first.

    >>> sorted(boundaries(["un", "beat", "able"]))
    [2, 6]
    >>> sorted(boundaries(["▁un", "beat", "able"]))
    [2, 6]
    """
    surfaces = seg.surfaces if isinstance(seg, Tokenisation) else seg
    pieces = _strip_spaces(surfaces, space_symbol)
    return frozenset(list(accumulate(len(piece) for piece in pieces))[:-1])


def score_record(gold: BoundarySet, pred: BoundarySet) -> BoundaryCounts:
    return BoundaryCounts(len(gold & pred), len(pred - gold), len(gold - pred))


def sequence_length(seg: Tokenisation, space_symbol: str) -> int:
    """Number of tokens that are not a lone space symbol."""
    return sum(1 for surface in seg.surfaces if surface != space_symbol)


def tokenize_word(model: SubwordModel, word: str) -> Tokenisation:
    """Tokenizes a word on its own, as the start of a sentence."""
    return model.tokenize_pretokens(
        pretokenize_word(word, model.space_mode, model.norm)
    )


_ScoreInput = tuple[SubwordModel, list[MorphRecord]]


def _score_shard(item: _ScoreInput) -> list[tuple[BoundaryCounts, int]]:
    model, records = item
    scored: list[tuple[BoundaryCounts, int]] = []
    for record in records:
        tokens = tokenize_word(model, record.word)
        counts = score_record(
            boundaries(record.gold_morphemes), boundaries(tokens, model.space_symbol)
        )
        scored.append((counts, sequence_length(tokens, model.space_symbol)))
    return scored


def _report(
    scored: Sequence[tuple[BoundaryCounts, int]], macro: bool
) -> EvalReport:
    total = BoundaryCounts()
    for counts, _ in scored:
        total += counts
    if macro:
        # Records without any boundary have nothing to average.
        scoring = [counts for counts, _ in scored if not counts.empty]
        if scoring:
            precision = math.fsum(c.precision for c in scoring) / len(scoring)
            recall = math.fsum(c.recall for c in scoring) / len(scoring)
            f1 = math.fsum(c.f1 for c in scoring) / len(scoring)
        else:
            precision = recall = f1 = 0.0
    else:
        precision, recall, f1 = total.precision, total.recall, total.f1
    length = math.fsum(n for _, n in scored) / len(scored)
    return EvalReport(
        total.true_positives,
        total.false_positives,
        total.false_negatives,
        round(precision, 1),
        round(recall, 1),
        round(f1, 1),
        round(length, 3),
        len(scored),
        macro,
    )


def evaluate(
    model: SubwordModel,
    records: Sequence[MorphRecord],
    macro: bool = False,
    workqueue: Optional[BaseWorkQueue] = None,
) -> EvalReport:
    """Scores model on records, each word tokenized in isolation."""
    if not records:
        raise ConfigError("Cannot evaluate on an empty dataset.")
    if workqueue is None:
        workqueue = BasicWorkQueue()
    scored: list[tuple[BoundaryCounts, int]] = []
    for part in workqueue.map_ordered(
        _score_shard, [(model, chunk) for chunk in shard(list(records))]
    ):
        scored.extend(part)
    report = _report(scored, macro)
    logger().info(
        "Evaluated %d records: P %.1f R %.1f F1 %.1f",
        report.n_records,
        report.precision,
        report.recall,
        report.f1,
    )
    return report


def average_f1(reports: Iterable[EvalReport]) -> float:
    """Unweighted mean F1 across datasets."""
    values = [report.f1 for report in reports]
    return round(math.fsum(values) / len(values), 1) if values else 0.0


def split_affixes(
    morphemes: Sequence[str], lexicon: AffixLexicon
) -> tuple[list[str], list[str]]:
    """Finds the prefixes and suffixes of a parse using a lexicon.

    Prefixes are the longest leading run of lexicon prefixes and suffixes the
    longest trailing run of lexicon suffixes, always leaving one morpheme as
    the base.
    """
    start = 0
    while start < len(morphemes) - 1 and morphemes[start] in lexicon.prefixes:
        start += 1
    end = len(morphemes)
    while end - 1 > start and morphemes[end - 1] in lexicon.suffixes:
        end -= 1
    return list(morphemes[:start]), list(morphemes[end:])


def filter_affix_subset(
    records: Iterable[MorphRecord],
    lexicon: Optional[AffixLexicon],
    which: AffixSubset | str,
) -> list[MorphRecord]:
    """Keeps records with affixes of only the requested kind.

    Annotated roles are used when a record has them; otherwise the lexicon
    decides.
    """
    which = AffixSubset(which)
    kept: list[MorphRecord] = []
    for record in records:
        if record.morph_types is not None:
            prefixes, suffixes = record.prefixes, record.suffixes
        elif lexicon is not None:
            prefixes, suffixes = split_affixes(record.gold_morphemes, lexicon)
        else:
            raise ConfigError(
                f"{record.word!r} has no affix annotations and no lexicon was given."
            )
        if which is AffixSubset.PREFIX and prefixes and not suffixes:
            kept.append(record)
        elif which is AffixSubset.SUFFIX and suffixes and not prefixes:
            kept.append(record)
    return kept
