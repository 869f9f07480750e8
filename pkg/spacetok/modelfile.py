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
"""The plain-text model file format.

::

    #spacetok-model
    version	1
    algorithm	bpe
    mode	isolated
    space_symbol	▁
    normalization	none
    collapse_whitespace	true
    vocab_size	300
    specials	[UNK] [PAD] [CLS] [SEP] [MASK]
    alphabet	3
    a
    b
    ▁
    entries	1
    a	b	0

The alphabet section is present for BPE and WordPiece only. Entries are
``left<TAB>right<TAB>rank`` merges for BPE, ``piece<TAB>logprob`` for Unigram
and one learned token per line for WordPiece. Log probabilities are written
as the shortest decimal that reads back to the same double, so loading and
saving a file reproduces it byte for byte.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from pathlib import Path
from typing import Optional

from spacetok.bpe import BpeModel, MergeRule, validate_merge
from spacetok.config import MODEL_FORMAT_VERSION, MODEL_MAGIC, Algorithm
from spacetok.errors import ConfigError, FormatError
from spacetok.model import SubwordModel
from spacetok.textnorm import NormConfig, SpaceMode, UnicodeNormalization
from spacetok.unigram import UnigramModel
from spacetok.vocab import SPECIAL_TOKENS
from spacetok.wordpiece import WordPieceModel


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


def _stored_mode(mode: SpaceMode) -> SpaceMode:
    # Dropping space tokens is an inference option, not a property of the file.
    return SpaceMode.ISOLATED if mode.isolated else SpaceMode.ATTACHED


def dumps(model: SubwordModel) -> str:
    """Serializes a model."""
    target = model.target_size if model.target_size is not None else model.vocab_size
    lines = [
        MODEL_MAGIC,
        f"version\t{MODEL_FORMAT_VERSION}",
        f"algorithm\t{model.algorithm.value}",
        f"mode\t{_stored_mode(model.space_mode).value}",
        f"space_symbol\t{model.space_symbol}",
        f"normalization\t{model.norm.unicode_normalization.value}",
        f"collapse_whitespace\t{str(model.norm.collapse_repeated_whitespace).lower()}",
        f"vocab_size\t{target}",
        f"specials\t{' '.join(SPECIAL_TOKENS)}",
    ]
    if isinstance(model, BpeModel):
        lines.append(f"alphabet\t{len(model.alphabet)}")
        lines.extend(model.alphabet)
        lines.append(f"entries\t{len(model.merges)}")
        lines.extend(f"{r.left}\t{r.right}\t{r.rank}" for r in model.merges)
    elif isinstance(model, WordPieceModel):
        lines.append(f"alphabet\t{len(model.alphabet)}")
        lines.extend(model.alphabet)
        lines.append(f"entries\t{len(model.tokens)}")
        lines.extend(model.tokens)
    elif isinstance(model, UnigramModel):
        lines.append(f"entries\t{len(model.logprobs)}")
        lines.extend(f"{p}\t{lp!r}" for p, lp in model.logprobs.items())
    else:
        raise TypeError(f"Cannot serialize {type(model).__name__}")
    return "\n".join(lines) + "\n"


class _Reader:
    """Reads model file lines with their numbers for error messages."""

    def __init__(self, text: str, source: str) -> None:
        if not text.endswith("\n"):
            raise FormatError(f"{source}: truncated model file")
        self.lines = text[:-1].split("\n")
        self.source = source
        self.pos = 0

    def error(self, message: str) -> FormatError:
        return FormatError(f"{self.source}:{self.pos}: {message}")

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise FormatError(f"{self.source}: unexpected end of model file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def field(self, name: str) -> str:
        key, sep, value = self.next().partition("\t")
        if key != name or not sep:
            raise self.error(f"expected {name!r} header")
        return value

    def count(self, name: str) -> int:
        value = self.field(name)
        if not value.isdecimal():
            raise self.error(f"bad {name} count {value!r}")
        return int(value)

    def block(self, name: str) -> Iterator[str]:
        for _ in range(self.count(name)):
            yield self.next()

    def finish(self) -> None:
        if self.pos != len(self.lines):
            raise FormatError(f"{self.source}:{self.pos + 1}: trailing data")


def _parse_enum(reader: _Reader, name: str, enum_type: type) -> object:
    value = reader.field(name)
    try:
        return enum_type(value)
    except ValueError as ex:
        raise reader.error(f"unknown {name} {value!r}") from ex


def loads(text: str, source: str = "<model>") -> SubwordModel:
    """Parses a serialized model."""
    reader = _Reader(text, source)
    if reader.next() != MODEL_MAGIC:
        raise reader.error("not a spacetok model file")
    version = reader.field("version")
    if version != str(MODEL_FORMAT_VERSION):
        raise reader.error(f"unsupported format version {version}")
    algorithm = _parse_enum(reader, "algorithm", Algorithm)
    mode = _parse_enum(reader, "mode", SpaceMode)
    if mode is SpaceMode.ISOLATED_NO_SPACES:
        raise reader.error("isolated-no-spaces is not a stored mode")
    assert isinstance(mode, SpaceMode)
    space_symbol = reader.field("space_symbol")
    normalization = _parse_enum(reader, "normalization", UnicodeNormalization)
    assert isinstance(normalization, UnicodeNormalization)
    collapse = reader.field("collapse_whitespace")
    if collapse not in ("true", "false"):
        raise reader.error(f"bad collapse_whitespace {collapse!r}")
    target = reader.field("vocab_size")
    if not target.isdecimal():
        raise reader.error(f"bad vocab_size {target!r}")
    if reader.field("specials").split(" ") != list(SPECIAL_TOKENS):
        raise reader.error("unexpected special tokens")
    try:
        norm = NormConfig(space_symbol, normalization, collapse == "true")
    except ConfigError as ex:
        raise reader.error(str(ex)) from ex

    model: SubwordModel
    if algorithm is Algorithm.BPE:
        alphabet = list(reader.block("alphabet"))
        merges: list[MergeRule] = []
        for line in reader.block("entries"):
            parts = line.split("\t")
            if len(parts) != 3 or not parts[2].isdecimal():
                raise reader.error(f"bad merge {line!r}")
            rule = MergeRule(parts[0], parts[1], int(parts[2]))
            if rule.rank != len(merges):
                raise reader.error(f"merge rank {rule.rank} out of order")
            validate_merge(rule, mode, space_symbol)
            merges.append(rule)
        model = BpeModel(alphabet, merges, mode, norm, int(target))
    elif algorithm is Algorithm.WORDPIECE:
        alphabet = list(reader.block("alphabet"))
        tokens = list(reader.block("entries"))
        model = WordPieceModel(alphabet, tokens, mode, norm, int(target))
    else:
        logprobs: dict[str, float] = {}
        for line in reader.block("entries"):
            piece, sep, value = line.partition("\t")
            try:
                logprob = float(value)
            except ValueError as ex:
                raise reader.error(f"bad log probability {value!r}") from ex
            if not sep or not piece or math.isnan(logprob) or logprob > 0:
                raise reader.error(f"bad piece {line!r}")
            if piece in logprobs:
                raise reader.error(f"duplicate piece {piece!r}")
            logprobs[piece] = logprob
        model = UnigramModel(logprobs, mode, norm, int(target))
    reader.finish()
    return model


def save_model(model: SubwordModel, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as model_file:
        model_file.write(dumps(model))
    logger().info(
        "Wrote %s model with %d tokens to %s",
        model.algorithm.value,
        model.vocab_size,
        path,
    )


def load_model(path: Path, algorithm: Optional[Algorithm] = None) -> SubwordModel:
    """Loads a model file, checking its algorithm if one is required."""
    try:
        text = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as ex:
        raise FormatError(f"{path} is not valid UTF-8: {ex}") from ex
    model = loads(text, str(path))
    if algorithm is not None and model.algorithm is not algorithm:
        raise FormatError(
            f"{path} holds a {model.algorithm.value} model, not {algorithm.value}"
        )
    return model
