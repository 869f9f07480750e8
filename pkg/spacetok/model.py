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
"""The interface shared by every trained tokeniser."""
from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable
from typing import ClassVar, Optional

from spacetok.config import Algorithm
from spacetok.errors import ConfigError
from spacetok.textnorm import NormConfig, SpaceMode, pretokenize_line, strip_spaces
from spacetok.vocab import Tokenisation, build_id_map


class SubwordModel(ABC):
    """A trained, immutable tokeniser.

    Subclasses provide the learned pieces and how a single pretoken is split.
    Everything else (normalization, ID lookup, UNK handling, the optional
    removal of space tokens) is common.
    """

    algorithm: ClassVar[Algorithm]

    def __init__(
        self,
        space_mode: SpaceMode,
        norm: NormConfig = NormConfig(),
        target_size: Optional[int] = None,
    ) -> None:
        self.space_mode = space_mode
        self.norm = norm
        self.target_size = target_size
        self._id_map: Optional[dict[str, int]] = None

    @property
    def space_symbol(self) -> str:
        return self.norm.space_symbol

    @property
    @abstractmethod
    def pieces(self) -> list[str]:
        """Learned vocabulary in ID order, without the reserved specials."""

    @abstractmethod
    def split_pretoken(self, pretoken: str) -> list[str]:
        """Splits one pretoken into surface substrings.

        The substrings concatenate to the pretoken. Any substring that is not
        in the vocabulary becomes UNK.
        """

    @property
    @abstractmethod
    def num_entries(self) -> int:
        """Number of learned entries: merges, tokens or pieces."""

    @property
    def id_map(self) -> dict[str, int]:
        if self._id_map is None:
            self._id_map = build_id_map(self.pieces)
        return self._id_map

    @property
    def vocab(self) -> list[str]:
        """Every token, specials included, in ID order."""
        return list(self.id_map)

    @property
    def vocab_size(self) -> int:
        return len(self.id_map)

    def tokenize(self, text: str | bytes) -> Tokenisation:
        """Normalizes and tokenizes one line of text."""
        return self.tokenize_pretokens(
            pretokenize_line(text, self.space_mode, self.norm)
        )

    def tokenize_in_mode(
        self, text: str | bytes, mode: Optional[SpaceMode] = None
    ) -> Tokenisation:
        """Tokenizes one line in mode, which defaults to the model's own.

        An isolated model also tokenizes in isolated-no-spaces mode. Crossing
        between attached and isolated raises ConfigError.
        """
        if mode is None or mode is self.space_mode:
            return self.tokenize(text)
        if mode.isolated != self.space_mode.isolated:
            raise ConfigError(
                f"A {self.space_mode.value} model cannot tokenize in {mode.value} mode."
            )
        return self.tokenize_pretokens(pretokenize_line(text, mode, self.norm), mode)

    def tokenize_pretokens(
        self, pretokens: Iterable[str], space_mode: Optional[SpaceMode] = None
    ) -> Tokenisation:
        """Tokenizes pretokens; space_mode overrides whether spaces are kept."""
        surfaces: list[str] = []
        for pretoken in pretokens:
            surfaces.extend(self.split_pretoken(pretoken))
        tokens = Tokenisation.from_surfaces(surfaces, self.id_map)
        if (space_mode or self.space_mode) is SpaceMode.ISOLATED_NO_SPACES:
            return strip_spaces(tokens, self.space_symbol)
        return tokens

    def __getstate__(self) -> dict[str, object]:
        # Caches are rebuilt on demand in worker processes.
        state = self.__dict__.copy()
        state["_id_map"] = None
        for key in state:
            if key.startswith("_cache"):
                state[key] = {}
        return state
