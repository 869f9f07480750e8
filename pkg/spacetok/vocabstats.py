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
"""Vocabulary analytics: degeneracy, overlap, affix coverage and corpus length.

Vocabularies of attached-mode models often hold a token twice, once with a
leading space symbol and once without. These functions measure that, compare
an attached vocabulary with an isolated one, count how many entries are known
English affixes and count how many tokens a model spends on a corpus.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from spacetok.errors import FormatError
from spacetok.textnorm import DEFAULT_SPACE_SYMBOL
from spacetok.vocab import without_specials

DEFAULT_LEXICON = Path(__file__).resolve().parent / "data" / "affixes.txt"


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


@dataclass(frozen=True)
class AffixLexicon:
    prefixes: frozenset[str]
    suffixes: frozenset[str]
    source: Optional[Path] = None


@dataclass(frozen=True)
class Degeneracy:
    ratio: float
    duplicates: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class SequenceLength:
    """How many tokens a model cuts a corpus into.

    Standalone space tokens only occur in isolated mode; the without_spaces
    figures leave them out.
    """

    sentences: int
    tokens: int
    tokens_without_spaces: int

    @property
    def per_sentence(self) -> float:
        return self.tokens / self.sentences if self.sentences else 0.0

    @property
    def per_sentence_without_spaces(self) -> float:
        if not self.sentences:
            return 0.0
        return self.tokens_without_spaces / self.sentences

    def as_dict(self) -> dict[str, Any]:
        return {
            "sentences": self.sentences,
            "tokens": self.tokens,
            "tokens_without_spaces": self.tokens_without_spaces,
            "per_sentence": self.per_sentence,
            "per_sentence_without_spaces": self.per_sentence_without_spaces,
        }


def strip_space(token: str, space_symbol: str = DEFAULT_SPACE_SYMBOL) -> str:
    """Drops one leading space symbol, leaving a lone space symbol intact.

    >>> strip_space("▁ab"), strip_space("▁")
    ('ab', '▁')
    """
    if len(token) > 1 and token.startswith(space_symbol):
        return token[1:]
    return token


def deduplicate(
    vocab: Iterable[str], space_symbol: str = DEFAULT_SPACE_SYMBOL
) -> set[str]:
    """The vocabulary without specials, with leading space symbols removed."""
    return {strip_space(token, space_symbol) for token in without_specials(vocab)}


def degeneracy(
    vocab: Iterable[str], space_symbol: str = DEFAULT_SPACE_SYMBOL
) -> Degeneracy:
    """Share of tokens that also appear with a leading space symbol.

    >>> degeneracy({"a", "▁a", "b"}).duplicates
    (('a', '▁a'),)
    """
    tokens = without_specials(vocab)
    if not tokens:
        return Degeneracy(0.0, ())
    duplicates = tuple(
        sorted((t, space_symbol + t) for t in tokens if space_symbol + t in tokens)
    )
    return Degeneracy(len(duplicates) / len(tokens), duplicates)


def overlap(
    default_vocab: Iterable[str],
    modified_vocab: Iterable[str],
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> float:
    """Share of the (deduplicated) default vocabulary found in the modified one."""
    default = deduplicate(default_vocab, space_symbol)
    if not default:
        return 0.0
    return len(default & without_specials(modified_vocab)) / len(default)


def converse_overlap(
    default_vocab: Iterable[str],
    modified_vocab: Iterable[str],
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> float:
    """Share of the modified vocabulary found in the deduplicated default one."""
    modified = without_specials(modified_vocab)
    if not modified:
        return 0.0
    return len(deduplicate(default_vocab, space_symbol) & modified) / len(modified)


def unique_elements(
    vocab: Iterable[str],
    other: Iterable[str],
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> int:
    """Number of deduplicated entries of vocab that other lacks."""
    return len(deduplicate(vocab, space_symbol) - deduplicate(other, space_symbol))


def affix_counts(
    vocab: Iterable[str],
    lexicon: AffixLexicon,
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> tuple[int, int]:
    """Numbers of deduplicated entries that are lexicon prefixes and suffixes."""
    tokens = deduplicate(vocab, space_symbol)
    return len(tokens & lexicon.prefixes), len(tokens & lexicon.suffixes)


def parse_lexicon(
    lines: Iterable[str],
    source: Optional[Path] = None,
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> AffixLexicon:
    """Parses "[prefixes]" and "[suffixes]" sections, one affix per line.

    Hyphens marking the attachment side ("un-", "-able") are dropped, as is
    everything after "#".
    """
    sections: dict[str, set[str]] = {"prefixes": set(), "suffixes": set()}
    current: Optional[set[str]] = None
    where = source if source is not None else "lexicon"
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().lower()
            if name not in sections:
                raise FormatError(f"{where}:{number}: unknown section {line}")
            current = sections[name]
            continue
        if current is None:
            raise FormatError(f"{where}:{number}: affix outside of a section")
        affix = line.strip("-")
        if not affix or affix != affix.lower() or space_symbol in affix:
            raise FormatError(f"{where}:{number}: invalid affix {line!r}")
        current.add(affix)
    return AffixLexicon(
        frozenset(sections["prefixes"]), frozenset(sections["suffixes"]), source
    )


def load_lexicon(path: Optional[Path] = None) -> AffixLexicon:
    """Loads an affix lexicon, by default the bundled English one."""
    if path is None:
        path = DEFAULT_LEXICON
    with path.open(encoding="utf-8") as lexicon_file:
        lexicon = parse_lexicon(lexicon_file, path)
    logger().info(
        "Loaded %d prefixes and %d suffixes from %s",
        len(lexicon.prefixes),
        len(lexicon.suffixes),
        path,
    )
    return lexicon


def sequence_length(
    sentences: Iterable[Sequence[str]], space_symbol: str = DEFAULT_SPACE_SYMBOL
) -> SequenceLength:
    """Counts tokens over tokenized sentences, given as token surfaces.

    >>> length = sequence_length([("▁", "a", "▁", "bc"), ("d",)])
    >>> length.tokens, length.tokens_without_spaces, length.per_sentence
    (5, 3, 2.5)
    """
    count = tokens = spaces = 0
    for surfaces in sentences:
        count += 1
        tokens += len(surfaces)
        spaces += sum(1 for surface in surfaces if surface == space_symbol)
    return SequenceLength(count, tokens, tokens - spaces)
