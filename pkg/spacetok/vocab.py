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
"""Token sequences, reserved specials and ID assignment."""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass

UNK = "[UNK]"
PAD = "[PAD]"
CLS = "[CLS]"
SEP = "[SEP]"
MASK = "[MASK]"

# Order matters: the position of each special is its ID.
SPECIAL_TOKENS: tuple[str, ...] = (UNK, PAD, CLS, SEP, MASK)
UNK_ID = 0


@dataclass(frozen=True)
class Tokenisation:
    """The output of a tokeniser for one line of text.

    tokens are vocabulary strings ([UNK] for anything uncovered), ids their
    integer IDs, and surfaces the exact normalized text each token stands for.
    surfaces always concatenate back to the normalized input, which keeps
    detokenization lossless even when some tokens are unknown.
    """

    tokens: tuple[str, ...] = ()
    ids: tuple[int, ...] = ()
    surfaces: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        assert len(self.tokens) == len(self.ids) == len(self.surfaces)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    @classmethod
    def from_surfaces(
        cls, surfaces: Iterable[str], id_map: Mapping[str, int]
    ) -> Tokenisation:
        """Builds a Tokenisation, mapping surfaces missing from id_map to UNK."""
        tokens: list[str] = []
        ids: list[int] = []
        surface_list = list(surfaces)
        for surface in surface_list:
            token_id = id_map.get(surface)
            if token_id is None:
                tokens.append(UNK)
                ids.append(UNK_ID)
            else:
                tokens.append(surface)
                ids.append(token_id)
        return cls(tuple(tokens), tuple(ids), tuple(surface_list))

    def select(self, keep: Sequence[bool]) -> Tokenisation:
        """Returns the tokens whose flag in keep is set, in order."""
        indices = [i for i, flag in enumerate(keep) if flag]
        return Tokenisation(
            tuple(self.tokens[i] for i in indices),
            tuple(self.ids[i] for i in indices),
            tuple(self.surfaces[i] for i in indices),
        )


def build_id_map(pieces: Iterable[str]) -> dict[str, int]:
    """Assigns IDs: reserved specials first, then pieces in the given order.

    A piece repeated later in the sequence keeps its first ID.
    """
    id_map: dict[str, int] = {}
    for token in SPECIAL_TOKENS:
        id_map[token] = len(id_map)
    for piece in pieces:
        if piece not in id_map:
            id_map[piece] = len(id_map)
    return id_map


def without_specials(vocab: Iterable[str]) -> set[str]:
    return {token for token in vocab if token not in SPECIAL_TOKENS}
