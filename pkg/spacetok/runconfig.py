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
"""Run configuration for training, loaded from JSON and command-line flags."""
from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from spacetok.bpe import RewriteStrategy
from spacetok.config import DEFAULT_VOCAB_SIZE, Algorithm
from spacetok.errors import ConfigError
from spacetok.textnorm import (
    DEFAULT_SPACE_SYMBOL,
    NormConfig,
    SpaceMode,
    UnicodeNormalization,
)
from spacetok.unigram import UnigramTrainConfig

_PATH_FIELDS = ("corpus", "output", "report")
_ENUM_FIELDS: dict[str, type[enum.Enum]] = {
    "algorithm": Algorithm,
    "mode": SpaceMode,
    "unicode_normalization": UnicodeNormalization,
    "bpe_strategy": RewriteStrategy,
}


@dataclass(frozen=True)
class RunConfig:
    """Everything a training run needs.

    A JSON config file may set any field by name; enum fields take their
    string values, e.g. ``{"algorithm": "unigram", "mode": "isolated"}``.
    """

    corpus: Optional[Path] = None
    output: Optional[Path] = None
    report: Optional[Path] = None
    algorithm: Algorithm = Algorithm.BPE
    mode: SpaceMode = SpaceMode.ATTACHED
    vocab_size: int = DEFAULT_VOCAB_SIZE
    space_symbol: str = DEFAULT_SPACE_SYMBOL
    unicode_normalization: UnicodeNormalization = UnicodeNormalization.NONE
    collapse_whitespace: bool = True
    seed_size: int = 1_000_000
    max_piece_length: int = 16
    em_iterations: int = 2
    shrink_factor: float = 0.75
    threads: int = 1
    bpe_strategy: Optional[RewriteStrategy] = None

    def __post_init__(self) -> None:
        if self.vocab_size < 1:
            raise ConfigError(f"Vocabulary size must be positive: {self.vocab_size}")
        if self.mode is SpaceMode.ISOLATED_NO_SPACES:
            raise ConfigError(
                "Models are trained in isolated mode; drop spaces at tokenization."
            )

    @classmethod
    def from_dict(cls, values: dict[str, Any]) -> RunConfig:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(values) - names)
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(unknown)}")
        parsed: dict[str, Any] = {}
        for key, value in values.items():
            if value is None:
                parsed[key] = None
            elif key in _PATH_FIELDS:
                parsed[key] = Path(value)
            elif key in _ENUM_FIELDS:
                try:
                    parsed[key] = _ENUM_FIELDS[key](value)
                except ValueError as ex:
                    raise ConfigError(f"Bad value for {key}: {value!r}") from ex
            else:
                parsed[key] = value
        try:
            return cls(**parsed)
        except TypeError as ex:
            raise ConfigError(str(ex)) from ex

    @classmethod
    def load(cls, path: Path) -> RunConfig:
        with path.open(encoding="utf-8") as config_file:
            try:
                values = json.load(config_file)
            except json.JSONDecodeError as ex:
                raise ConfigError(f"{path} is not valid JSON: {ex}") from ex
        if not isinstance(values, dict):
            raise ConfigError(f"{path} must hold a JSON object")
        # Relative paths in a config file are relative to the file.
        for key in _PATH_FIELDS:
            if isinstance(values.get(key), str):
                values[key] = str(path.parent / values[key])
        return cls.from_dict(values)

    def with_overrides(self, **overrides: Any) -> RunConfig:
        """Returns a copy with every override that is not None applied."""
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None}
        )

    @property
    def norm(self) -> NormConfig:
        return NormConfig(
            self.space_symbol, self.unicode_normalization, self.collapse_whitespace
        )

    @property
    def unigram(self) -> UnigramTrainConfig:
        return UnigramTrainConfig(
            target_size=self.vocab_size,
            seed_size=self.seed_size,
            max_piece_length=self.max_piece_length,
            em_iterations_per_round=self.em_iterations,
            shrink_factor=self.shrink_factor,
        )
