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
"""Gold morphological segmentation datasets.

Each supported dataset has an adapter from its published column layout to
MorphRecord. Only concatenative parses are kept: the morphemes must spell the
word exactly. Words with more than one distinct parse are dropped entirely.

Column layouts, after conversion to delimited text:

ladec
    CSV with a header naming ``stim``, ``c1`` and ``c2`` (compound and its two
    constituents), or headerless ``stim,c1,c2`` rows.
morpholex
    Tab- or comma-separated with a header naming ``Word`` and
    ``MorphoLexSegm``, where the segmentation looks like ``{<un<(beat)>able>}``.
morphynet
    Derivational TSV: ``source, target, source POS, target POS, affix, type``
    where type is ``prefix`` or ``suffix``.
dagobert
    ``derivative<TAB>prefixes<TAB>base<TAB>suffixes`` with comma-separated
    affix lists, either of which may be empty.
custom
    ``word<TAB>morph1 morph2 ...``, the normalized format this package writes.
"""
from __future__ import annotations

import csv
import enum
import logging
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from spacetok.errors import FormatError, NormalizationError
from spacetok.textnorm import DEFAULT_SPACE_SYMBOL

_WHITESPACE = re.compile(r"\s")
_MORPHOLEX_PART = re.compile(r"<([^<>(){}]+)<|\(([^<>(){}]+)\)|>([^<>(){}]+)>")


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


@enum.unique
class DatasetFormat(enum.Enum):
    LADEC = "ladec"
    MORPHOLEX = "morpholex"
    MORPHYNET = "morphynet"
    DAGOBERT = "dagobert"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, name: str) -> DatasetFormat:
        try:
            return cls(name.lower())
        except ValueError as ex:
            known = ", ".join(f.value for f in cls)
            raise FormatError(
                f"Unknown dataset format {name!r}; expected one of {known}"
            ) from ex


@enum.unique
class MorphType(enum.Enum):
    PREFIX = "prefix"
    ROOT = "root"
    SUFFIX = "suffix"


@dataclass(frozen=True)
class MorphRecord:
    """A word and its gold segmentation.

    morph_types, when the source annotates them, gives the role of each
    morpheme.
    """

    word: str
    gold_morphemes: tuple[str, ...]
    source: DatasetFormat = DatasetFormat.CUSTOM
    morph_types: Optional[tuple[MorphType, ...]] = None

    def __post_init__(self) -> None:
        assert self.gold_morphemes and all(self.gold_morphemes)
        assert "".join(self.gold_morphemes) == self.word
        if self.morph_types is not None:
            assert len(self.morph_types) == len(self.gold_morphemes)

    @property
    def prefixes(self) -> list[str]:
        return self._of_type(MorphType.PREFIX)

    @property
    def suffixes(self) -> list[str]:
        return self._of_type(MorphType.SUFFIX)

    def _of_type(self, morph_type: MorphType) -> list[str]:
        if self.morph_types is None:
            return []
        return [
            m for m, t in zip(self.gold_morphemes, self.morph_types) if t is morph_type
        ]


class MalformedRow(ValueError):
    """A row that does not follow its dataset's layout."""


@dataclass(frozen=True)
class ParsedRow:
    word: str
    morphemes: tuple[str, ...]
    morph_types: Optional[tuple[MorphType, ...]] = None


# Yielded by adapters for header rows, which are neither kept nor counted.
HEADER = ParsedRow("", ())


@dataclass
class IngestStats:
    """What happened to each input row."""

    rows: int = 0
    kept: int = 0
    malformed: int = 0
    non_concatenative: int = 0
    multi_parse: int = 0
    whitespace: int = 0
    duplicates: int = 0
    malformed_lines: list[int] = field(default_factory=list)

    @property
    def dropped(self) -> int:
        return self.rows - self.kept


def _clean(values: Iterable[str]) -> tuple[str, ...]:
    return tuple(v.strip() for v in values if v.strip())


def _parse_ladec(rows: Iterator[list[str]]) -> Iterator[Optional[ParsedRow]]:
    columns = (0, 1, 2)
    for row in rows:
        cells = [c.strip() for c in row]
        lowered = [c.lower() for c in cells]
        if {"stim", "c1", "c2"} <= set(lowered):
            columns = (lowered.index("stim"), lowered.index("c1"), lowered.index("c2"))
            yield HEADER
            continue
        if len(cells) <= max(columns):
            yield None
            continue
        word, first, second = (cells[i] for i in columns)
        if not (word and first and second):
            yield None
            continue
        yield ParsedRow(word, (first, second), (MorphType.ROOT, MorphType.ROOT))


def parse_morpholex_segmentation(
    segm: str,
) -> tuple[tuple[str, ...], tuple[MorphType, ...]]:
    """Splits a MorphoLex segmentation string into morphemes and their roles.

    >>> parse_morpholex_segmentation("{<un<(beat)>able>}")[0]
    ('un', 'beat', 'able')
    """
    morphemes: list[str] = []
    types: list[MorphType] = []
    for match in _MORPHOLEX_PART.finditer(segm):
        prefix, root, suffix = match.groups()
        if prefix is not None:
            morphemes.append(prefix)
            types.append(MorphType.PREFIX)
        elif root is not None:
            morphemes.append(root)
            types.append(MorphType.ROOT)
        else:
            morphemes.append(suffix)
            types.append(MorphType.SUFFIX)
    if not morphemes:
        raise MalformedRow(f"No morphemes in {segm!r}")
    return tuple(morphemes), tuple(types)


def _parse_morpholex(rows: Iterator[list[str]]) -> Iterator[Optional[ParsedRow]]:
    columns: Optional[tuple[int, int]] = None
    for row in rows:
        cells = [c.strip() for c in row]
        if columns is None:
            lowered = [c.lower() for c in cells]
            if "word" in lowered and "morpholexsegm" in lowered:
                columns = (lowered.index("word"), lowered.index("morpholexsegm"))
                yield HEADER
                continue
            columns = (0, 1)
        word_col, segm_col = columns
        if len(cells) <= max(columns) or not cells[word_col]:
            yield None
            continue
        try:
            morphemes, types = parse_morpholex_segmentation(cells[segm_col])
        except MalformedRow:
            yield None
            continue
        yield ParsedRow(cells[word_col], morphemes, types)


def _parse_morphynet(rows: Iterator[list[str]]) -> Iterator[Optional[ParsedRow]]:
    for row in rows:
        if len(row) < 6:
            yield None
            continue
        source, target, _, _, affix, kind = (c.strip() for c in row[:6])
        if not (source and target and affix):
            yield None
            continue
        if kind == "prefix":
            yield ParsedRow(target, (affix, source), (MorphType.PREFIX, MorphType.ROOT))
        elif kind == "suffix":
            yield ParsedRow(target, (source, affix), (MorphType.ROOT, MorphType.SUFFIX))
        else:
            yield None


def _parse_dagobert(rows: Iterator[list[str]]) -> Iterator[Optional[ParsedRow]]:
    for row in rows:
        if len(row) < 4:
            yield None
            continue
        word = row[0].strip()
        prefixes = _clean(row[1].split(","))
        base = row[2].strip()
        suffixes = _clean(row[3].split(","))
        if not (word and base):
            yield None
            continue
        yield ParsedRow(
            word,
            prefixes + (base,) + suffixes,
            (MorphType.PREFIX,) * len(prefixes)
            + (MorphType.ROOT,)
            + (MorphType.SUFFIX,) * len(suffixes),
        )


def _parse_custom(rows: Iterator[list[str]]) -> Iterator[Optional[ParsedRow]]:
    for row in rows:
        if len(row) != 2 or not row[0].strip():
            yield None
            continue
        morphemes = tuple(row[1].split())
        if not morphemes:
            yield None
            continue
        yield ParsedRow(row[0].strip(), morphemes)


_ADAPTERS = {
    DatasetFormat.LADEC: _parse_ladec,
    DatasetFormat.MORPHOLEX: _parse_morpholex,
    DatasetFormat.MORPHYNET: _parse_morphynet,
    DatasetFormat.DAGOBERT: _parse_dagobert,
    DatasetFormat.CUSTOM: _parse_custom,
}


def _split_rows(lines: Sequence[str], fmt: DatasetFormat) -> Iterator[list[str]]:
    if fmt is DatasetFormat.LADEC:
        return csv.reader(lines)
    if fmt is DatasetFormat.MORPHOLEX and lines and "\t" not in lines[0]:
        return csv.reader(lines)
    return (line.rstrip("\r\n").split("\t") for line in lines)


def parse_records(
    lines: Iterable[str],
    fmt: DatasetFormat | str,
    dedupe: bool = True,
    lowercase: bool = False,
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> tuple[list[MorphRecord], IngestStats]:
    """Parses dataset lines into records, filtering as described above.

    Blank lines and lines starting with "#" are ignored. A row containing
    space_symbol raises NormalizationError, as it would in a corpus.
    """
    if isinstance(fmt, str):
        fmt = DatasetFormat.parse(fmt)
    stats = IngestStats()
    numbered = [
        (number, line)
        for number, line in enumerate(lines, start=1)
        if line.strip() and not line.startswith("#")
    ]
    parsed = _ADAPTERS[fmt](_split_rows([line for _, line in numbered], fmt))

    candidates: list[ParsedRow] = []
    for (number, _), row in zip(numbered, parsed):
        if row is HEADER:
            continue
        stats.rows += 1
        if row is None:
            stats.malformed += 1
            stats.malformed_lines.append(number)
            continue
        if any(space_symbol in part for part in (row.word, *row.morphemes)):
            raise NormalizationError(
                f"Line {number} contains the space symbol {space_symbol!r}: "
                f"{row.word!r}"
            )
        if lowercase:
            row = ParsedRow(
                row.word.lower(),
                tuple(m.lower() for m in row.morphemes),
                row.morph_types,
            )
        if _WHITESPACE.search(row.word) or any(
            _WHITESPACE.search(m) for m in row.morphemes
        ):
            stats.whitespace += 1
            continue
        if "".join(row.morphemes) != row.word:
            stats.non_concatenative += 1
            continue
        candidates.append(row)
    parses: dict[str, set[tuple[str, ...]]] = {}
    for row in candidates:
        parses.setdefault(row.word, set()).add(row.morphemes)
    records: list[MorphRecord] = []
    seen: set[str] = set()
    for row in candidates:
        if len(parses[row.word]) > 1:
            stats.multi_parse += 1
            continue
        if dedupe and row.word in seen:
            stats.duplicates += 1
            continue
        seen.add(row.word)
        records.append(MorphRecord(row.word, row.morphemes, fmt, row.morph_types))
    stats.kept = len(records)
    return records, stats


def read_dataset(
    path: Path,
    fmt: DatasetFormat | str,
    dedupe: bool = True,
    lowercase: bool = False,
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> tuple[list[MorphRecord], IngestStats]:
    """Reads a dataset file and logs what was kept and dropped."""
    if isinstance(fmt, str):
        fmt = DatasetFormat.parse(fmt)
    try:
        with path.open(encoding="utf-8", newline="") as dataset_file:
            lines = list(dataset_file)
    except UnicodeDecodeError as ex:
        raise FormatError(f"{path} is not valid UTF-8: {ex}") from ex
    try:
        records, stats = parse_records(lines, fmt, dedupe, lowercase, space_symbol)
    except NormalizationError as ex:
        raise NormalizationError(f"{path}: {ex}") from ex
    if stats.malformed:
        logger().warning(
            "%s: skipped %d malformed rows (first on line %d)",
            path,
            stats.malformed,
            stats.malformed_lines[0],
        )
    logger().info(
        "%s (%s): kept %d of %d rows; dropped %d non-concatenative, "
        "%d multi-parse, %d with whitespace, %d duplicates",
        path,
        fmt.value,
        stats.kept,
        stats.rows,
        stats.non_concatenative,
        stats.multi_parse,
        stats.whitespace,
        stats.duplicates,
    )
    return records, stats


def ingest_dataset(path: Path, fmt: DatasetFormat | str) -> list[MorphRecord]:
    return read_dataset(path, fmt)[0]


def write_normalized(records: Iterable[MorphRecord], path: Path) -> int:
    """Writes records in the custom format. Returns the number written."""
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as out:
        for record in records:
            out.write(f"{record.word}\t{' '.join(record.gold_morphemes)}\n")
            count += 1
    return count
