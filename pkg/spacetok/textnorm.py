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
"""Text normalization, space-symbol handling and pretokenization.

A line of raw text becomes a sequence of pretokens. Every tokeniser in this
package works within pretokens and never merges across them.

In attached mode each word carries a leading space symbol, including the
first word of a sentence:

>>> pretokenize_line("ab ab", SpaceMode.ATTACHED, NormConfig())
('▁ab', '▁ab')

In isolated mode every space is a pretoken of its own:

>>> pretokenize_line("ab ab", SpaceMode.ISOLATED, NormConfig())
('ab', '▁', 'ab')
"""
from __future__ import annotations

import enum
import logging
import re
import unicodedata
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from spacetok.errors import ConfigError, DecodeError, NormalizationError
from spacetok.vocab import Tokenisation

DEFAULT_SPACE_SYMBOL = "▁"

_WHITESPACE = re.compile(r"\s")
_WHITESPACE_RUN = re.compile(r"\s+")


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


@enum.unique
class SpaceMode(enum.Enum):
    """How the space symbol is placed relative to words.

    ATTACHED is the conventional behaviour, where tokens may begin with the
    space symbol. ISOLATED makes every space its own token. ISOLATED_NO_SPACES
    is ISOLATED with the space tokens removed after tokenization.
    """

    ATTACHED = "attached"
    ISOLATED = "isolated"
    ISOLATED_NO_SPACES = "isolated-no-spaces"

    @property
    def isolated(self) -> bool:
        return self is not SpaceMode.ATTACHED


@enum.unique
class UnicodeNormalization(enum.Enum):
    NONE = "none"
    NFKC = "nfkc"


@dataclass(frozen=True)
class NormConfig:
    space_symbol: str = DEFAULT_SPACE_SYMBOL
    unicode_normalization: UnicodeNormalization = UnicodeNormalization.NONE
    collapse_repeated_whitespace: bool = True

    def __post_init__(self) -> None:
        if len(self.space_symbol) != 1:
            raise ConfigError(
                f"Space symbol must be a single character: {self.space_symbol!r}"
            )
        if _WHITESPACE.match(self.space_symbol):
            raise ConfigError("Space symbol must not be whitespace.")


@dataclass(frozen=True)
class Corpus:
    """Normalized training text: one tuple of pretokens per sentence."""

    sentences: tuple[tuple[str, ...], ...]
    space_mode: SpaceMode
    space_symbol: str = DEFAULT_SPACE_SYMBOL

    def __len__(self) -> int:
        return len(self.sentences)

    @cached_property
    def pretoken_counts(self) -> Counter[str]:
        """Occurrence count of every distinct pretoken."""
        counts: Counter[str] = Counter()
        for sentence in self.sentences:
            counts.update(sentence)
        return counts

    @property
    def num_pretokens(self) -> int:
        return sum(self.pretoken_counts.values())

    @property
    def num_characters(self) -> int:
        return sum(len(p) * n for p, n in self.pretoken_counts.items())

    @property
    def alphabet(self) -> set[str]:
        chars: set[str] = set()
        for pretoken in self.pretoken_counts:
            chars.update(pretoken)
        return chars


def decode_line(raw: str | bytes, line_number: int | None = None) -> str:
    """Decodes one input line and drops its line terminator."""
    where = f" on line {line_number}" if line_number is not None else ""
    if isinstance(raw, bytes):
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as ex:
            raise DecodeError(f"Input is not valid UTF-8{where}: {ex}") from ex
    else:
        try:
            raw.encode("utf-8")
        except UnicodeEncodeError as ex:
            raise DecodeError(f"Input is not valid Unicode{where}: {ex}") from ex
        text = raw
    if text.endswith("\n"):
        text = text[:-1]
    if text.endswith("\r"):
        text = text[:-1]
    return text


def canonicalize(line: str | bytes, cfg: NormConfig) -> str:
    """Returns the normalized form of a line with spaces as plain U+0020.

    This is the text that detokenize() reproduces for attached and isolated
    tokenisations. Leading and trailing whitespace is dropped.
    """
    text = decode_line(line)
    if cfg.unicode_normalization is UnicodeNormalization.NFKC:
        text = unicodedata.normalize("NFKC", text)
    if cfg.space_symbol in text:
        raise NormalizationError(
            f"Input already contains the space symbol {cfg.space_symbol!r}: {text!r}"
        )
    text = text.strip()
    if cfg.collapse_repeated_whitespace:
        return _WHITESPACE_RUN.sub(" ", text)
    return _WHITESPACE.sub(" ", text)


def pretokenize_line(
    line: str | bytes, mode: SpaceMode, cfg: NormConfig
) -> tuple[str, ...]:
    """Normalizes one sentence and splits it into pretokens."""
    text = canonicalize(line, cfg)
    if not text:
        return ()
    symbol = cfg.space_symbol
    parts = text.split(" ")
    if mode is SpaceMode.ATTACHED:
        # Uncollapsed runs of spaces leave empty parts, which become lone
        # space pretokens.
        return tuple(symbol + part for part in parts)
    pretokens: list[str] = []
    for i, part in enumerate(parts):
        if i:
            pretokens.append(symbol)
        if part:
            pretokens.append(part)
    return tuple(pretokens)


def pretokenize_word(word: str, mode: SpaceMode, cfg: NormConfig) -> tuple[str, ...]:
    """Pretokenizes a single bare word the way evaluation sees it.

    Attached mode prepends the space symbol, as for any sentence-initial word.
    """
    if _WHITESPACE.search(word):
        raise ConfigError(f"Word contains whitespace: {word!r}")
    return pretokenize_line(word, mode, cfg)


def normalize_corpus(
    raw: Iterable[str | bytes], mode: SpaceMode, cfg: NormConfig = NormConfig()
) -> Corpus:
    """Normalizes raw text, one sentence per line, into a Corpus."""
    sentences: list[tuple[str, ...]] = []
    for line_number, line in enumerate(raw, start=1):
        text = decode_line(line, line_number)
        sentences.append(pretokenize_line(text, mode, cfg))
    return Corpus(tuple(sentences), mode, cfg.space_symbol)


def read_corpus(path: Path, mode: SpaceMode, cfg: NormConfig = NormConfig()) -> Corpus:
    """Reads a UTF-8 corpus file, one sentence per line."""
    with path.open("rb") as corpus_file:
        corpus = normalize_corpus(corpus_file, mode, cfg)
    logger().info(
        "Read %d sentences, %d pretokens from %s",
        len(corpus),
        corpus.num_pretokens,
        path,
    )
    return corpus


def _surfaces(tokens: Tokenisation | Sequence[str]) -> Sequence[str]:
    if isinstance(tokens, Tokenisation):
        return tokens.surfaces
    return tokens


def detokenize(
    tokens: Tokenisation | Sequence[str],
    mode: SpaceMode,
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> str:
    """Reassembles text from tokens.

    Attached and isolated tokenisations give back the normalized input.
    ISOLATED_NO_SPACES cannot know where the spaces were, so all whitespace is
    lost.
    """
    text = "".join(_surfaces(tokens))
    if mode is SpaceMode.ATTACHED:
        if text.startswith(space_symbol):
            text = text[1:]
        return text.replace(space_symbol, " ")
    if mode is SpaceMode.ISOLATED:
        return text.replace(space_symbol, " ")
    return text.replace(space_symbol, "")


def strip_spaces(
    tokens: Tokenisation, space_symbol: str = DEFAULT_SPACE_SYMBOL
) -> Tokenisation:
    """Removes every standalone space token, keeping IDs of the rest."""
    return tokens.select([surface != space_symbol for surface in tokens.surfaces])
