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
"""WordPiece: BPE-style merging with a likelihood criterion.

Training is the BPE loop, except that the next pair maximizes

    count(l, r) / (count(l) * count(r))

so pairs whose parts rarely occur apart win over pairs of frequent symbols.
Inference is greedy longest-prefix matching. Tokens use the space symbol
convention throughout; there is no continuation marker.
"""
from __future__ import annotations

import heapq
import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from typing import Optional

from spacetok.bpe import (
    MIN_PAIR_COUNT,
    MergeState,
    Pair,
    PairSelector,
    RewriteStrategy,
    SelectionKey,
    learn_merges,
    resolve_mode,
)
from spacetok.config import Algorithm
from spacetok.model import SubwordModel
from spacetok.textnorm import Corpus, NormConfig, SpaceMode
from spacetok.vocab import Tokenisation
from spacetok.workqueue import BaseWorkQueue

MAX_INPUT_WORD_LENGTH = 100


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


def pair_score(pair_count: int, left_count: int, right_count: int) -> float:
    """The WordPiece merge score.

    >>> pair_score(2, 2, 2)
    0.5
    """
    return pair_count / (left_count * right_count)


class LikelihoodSelector(PairSelector):
    """Ranks pairs by pair_score, rescanning every candidate on each call."""

    def key(self, pair: Pair) -> SelectionKey:
        symbols = self.state.symbol_counts
        score = pair_score(
            self.state.pair_counts[pair], symbols[pair[0]], symbols[pair[1]]
        )
        return (-score, pair[0] + pair[1], pair[0])


class CachedLikelihoodSelector(LikelihoodSelector):
    """pair_score ranking backed by a lazily invalidated heap.

    Merging (l, r) changes the counts of l, r and lr and nothing else, so
    besides the pairs whose own counts changed only pairs containing one of
    those three symbols are rescored.
    """

    def __init__(self, state: MergeState) -> None:
        super().__init__(state)
        self.by_symbol: defaultdict[str, set[Pair]] = defaultdict(set)
        self.heap: list[tuple[SelectionKey, Pair]] = []
        self.merged: Optional[Pair] = None
        for pair in state.pair_counts:
            self._push(pair)

    def _push(self, pair: Pair) -> None:
        self.by_symbol[pair[0]].add(pair)
        self.by_symbol[pair[1]].add(pair)
        if self.state.pair_counts.get(pair, 0) >= MIN_PAIR_COUNT:
            heapq.heappush(self.heap, (self.key(pair), pair))

    def best(self) -> Optional[Pair]:
        while self.heap:
            key, pair = self.heap[0]
            count = self.state.pair_counts.get(pair, 0)
            if count >= MIN_PAIR_COUNT and key == self.key(pair):
                self.merged = pair
                return pair
            heapq.heappop(self.heap)
        return None

    def update(self, changed: Iterable[Pair]) -> None:
        affected = set(changed)
        if self.merged is not None:
            left, right = self.merged
            for symbol in (left, right, left + right):
                affected.update(self.by_symbol.get(symbol, ()))
        for pair in affected:
            if pair in self.state.pair_counts:
                self._push(pair)
            else:
                self.by_symbol[pair[0]].discard(pair)
                self.by_symbol[pair[1]].discard(pair)


def likelihood_selector(state: MergeState, incremental: bool) -> PairSelector:
    if incremental:
        return CachedLikelihoodSelector(state)
    return LikelihoodSelector(state)


class WordPieceModel(SubwordModel):
    """A WordPiece vocabulary with greedy longest-match inference."""

    algorithm = Algorithm.WORDPIECE

    def __init__(
        self,
        alphabet: Sequence[str],
        tokens: Iterable[str],
        space_mode: SpaceMode,
        norm: NormConfig = NormConfig(),
        target_size: Optional[int] = None,
        max_input_word_length: int = MAX_INPUT_WORD_LENGTH,
    ) -> None:
        super().__init__(space_mode, norm, target_size)
        self.alphabet = tuple(alphabet)
        seen = set(self.alphabet)
        learned: list[str] = []
        for token in tokens:
            if token not in seen:
                seen.add(token)
                learned.append(token)
        self.tokens = tuple(learned)
        self.max_input_word_length = max_input_word_length
        self._lookup = frozenset(seen)
        self._longest = max((len(t) for t in seen), default=0)

    @property
    def pieces(self) -> list[str]:
        return list(self.alphabet) + list(self.tokens)

    @property
    def num_entries(self) -> int:
        return len(self.tokens)

    def split_pretoken(self, pretoken: str) -> list[str]:
        # Returning the pretoken whole makes it a single UNK.
        if len(pretoken) > self.max_input_word_length:
            return [pretoken]
        pieces: list[str] = []
        start = 0
        while start < len(pretoken):
            end = min(len(pretoken), start + self._longest)
            while end > start and pretoken[start:end] not in self._lookup:
                end -= 1
            if end == start:
                return [pretoken]
            pieces.append(pretoken[start:end])
            start = end
        return pieces


def train_wordpiece(
    corpus: Corpus,
    target_size: int,
    mode: Optional[SpaceMode] = None,
    norm: Optional[NormConfig] = None,
    strategy: Optional[RewriteStrategy] = None,
    workqueue: Optional[BaseWorkQueue] = None,
) -> WordPieceModel:
    """Trains a WordPiece model with at most target_size tokens."""
    mode = resolve_mode(corpus, mode)
    if norm is None:
        norm = NormConfig(space_symbol=corpus.space_symbol)
    logger().debug("WordPiece pairs need at least %d occurrences", MIN_PAIR_COUNT)
    alphabet, merges = learn_merges(
        corpus, target_size, mode, likelihood_selector, strategy, workqueue
    )
    return WordPieceModel(
        alphabet, (rule.token for rule in merges), mode, norm, target_size
    )


def tokenize_wordpiece(
    model: WordPieceModel, text: str | bytes, mode: Optional[SpaceMode] = None
) -> Tokenisation:
    """Tokenizes one line by greedy longest match within each pretoken."""
    return model.tokenize_in_mode(text, mode)
