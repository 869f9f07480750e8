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
"""Byte-pair encoding in attached and isolated space modes.

Training starts from characters and repeatedly merges the most frequent
eligible adjacent pair. Which pairs are eligible depends on the space mode:

* attached: the space symbol may only begin a token, so a pair whose right
  side starts with the space symbol is never merged.
* isolated: no pair involving the space symbol is ever merged, so spaces stay
  single tokens.

Pairs never cross pretoken boundaries. Ties between equally frequent pairs go
to the pair whose concatenation sorts first by code point, then to the
shorter left side.
"""
from __future__ import annotations

import enum
import heapq
import logging
from collections import Counter, defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Optional, Union

from tqdm import tqdm

from spacetok.config import Algorithm
from spacetok.errors import ConfigError, FormatError
from spacetok.model import SubwordModel
from spacetok.textnorm import DEFAULT_SPACE_SYMBOL, Corpus, NormConfig, SpaceMode
from spacetok.vocab import SPECIAL_TOKENS, Tokenisation
from spacetok.workqueue import BaseWorkQueue, BasicWorkQueue, shard

# A merge needs the pair to recur; count-1 merges only memorise the corpus.
MIN_PAIR_COUNT = 2

# Above this many distinct pretokens, training switches from recounting every
# pair after each merge to incremental pair-delta updates.
EXACT_RECOUNT_LIMIT = 2000

# Upper bound on cached pretoken segmentations per model.
CACHE_LIMIT = 1 << 18

Word = tuple[str, ...]
Pair = tuple[str, str]
PairCounts = Counter[Pair]


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


@enum.unique
class RewriteStrategy(enum.Enum):
    EXACT = "exact"
    INCREMENTAL = "incremental"


@dataclass(frozen=True)
class MergeRule:
    left: str
    right: str
    rank: int

    @property
    def token(self) -> str:
        return self.left + self.right


def pair_allowed(
    left: str, right: str, mode: SpaceMode, space_symbol: str = DEFAULT_SPACE_SYMBOL
) -> bool:
    """True if (left, right) may be merged in the given mode."""
    if mode.isolated:
        return space_symbol not in left and space_symbol not in right
    return not right.startswith(space_symbol)


def validate_merge(rule: MergeRule, mode: SpaceMode, space_symbol: str) -> None:
    """Raises FormatError if rule could not have been learned in mode."""
    if mode.isolated:
        ok = space_symbol not in rule.left and space_symbol not in rule.right
    else:
        ok = space_symbol not in rule.left[1:] and space_symbol not in rule.right
    if not ok or not rule.left or not rule.right:
        raise FormatError(f"Merge {rule} is not valid in {mode.value} mode.")


def count_pairs(
    corpus_state: Union[Iterable[Sequence[str]], Mapping[Word, int]],
    mode: SpaceMode,
    space_symbol: str = DEFAULT_SPACE_SYMBOL,
) -> PairCounts:
    """Counts eligible adjacent token pairs.

    corpus_state is either a sequence of pretoken token sequences, each
    counted once, or a mapping from token sequence to its frequency.

    >>> count_pairs([["a", "b"], ["▁"], ["a", "b"]], SpaceMode.ISOLATED)
    Counter({('a', 'b'): 2})
    """
    if isinstance(corpus_state, Mapping):
        items: Iterable[tuple[Sequence[str], int]] = corpus_state.items()
    else:
        items = ((word, 1) for word in corpus_state)
    counts: PairCounts = Counter()
    for word, freq in items:
        for left, right in zip(word, word[1:]):
            if pair_allowed(left, right, mode, space_symbol):
                counts[(left, right)] += freq
    return counts


def merge_word(word: Sequence[str], left: str, right: str) -> Word:
    """Merges every occurrence of (left, right), scanning left to right."""
    merged: list[str] = []
    i = 0
    end = len(word)
    while i < end:
        if i + 1 < end and word[i] == left and word[i + 1] == right:
            merged.append(left + right)
            i += 2
        else:
            merged.append(word[i])
            i += 1
    return tuple(merged)


ShardInput = tuple[int, list[tuple[Word, int]], SpaceMode, str]
ShardOutput = tuple[PairCounts, dict[Pair, list[int]], Counter[str]]


def _count_shard(item: ShardInput) -> ShardOutput:
    """Counts pairs and symbols for one contiguous shard of words."""
    start, words, mode, space_symbol = item
    pairs: PairCounts = Counter()
    where: dict[Pair, list[int]] = defaultdict(list)
    symbols: Counter[str] = Counter()
    for offset, (word, freq) in enumerate(words):
        for symbol in word:
            symbols[symbol] += freq
        for pair in zip(word, word[1:]):
            if pair_allowed(pair[0], pair[1], mode, space_symbol):
                pairs[pair] += freq
                if not where[pair] or where[pair][-1] != start + offset:
                    where[pair].append(start + offset)
    return pairs, dict(where), symbols


class MergeState:
    """The corpus as token sequences, with pair and symbol statistics.

    Words are distinct pretokens weighted by their frequency, so counts are
    token-occurrence counts over the whole corpus.
    """

    def __init__(
        self,
        pretoken_counts: Mapping[str, int],
        mode: SpaceMode,
        space_symbol: str,
        workqueue: Optional[BaseWorkQueue] = None,
    ) -> None:
        self.mode = mode
        self.space_symbol = space_symbol
        ordered = sorted(pretoken_counts.items())
        self.words: list[Word] = [tuple(p) for p, _ in ordered]
        self.freqs: list[int] = [n for _, n in ordered]
        self.pair_counts: PairCounts = Counter()
        self.symbol_counts: Counter[str] = Counter()
        self.where: defaultdict[Pair, set[int]] = defaultdict(set)

        if workqueue is None:
            workqueue = BasicWorkQueue()
        weighted = list(zip(self.words, self.freqs))
        shards = shard(weighted)
        inputs: list[ShardInput] = []
        start = 0
        for chunk in shards:
            inputs.append((start, chunk, mode, space_symbol))
            start += len(chunk)
        for pairs, where, symbols in workqueue.map_ordered(_count_shard, inputs):
            self.pair_counts.update(pairs)
            self.symbol_counts.update(symbols)
            for pair, indices in where.items():
                self.where[pair].update(indices)

    def _pairs(self, word: Word) -> Iterable[Pair]:
        for pair in zip(word, word[1:]):
            if pair_allowed(pair[0], pair[1], self.mode, self.space_symbol):
                yield pair

    def recount(self) -> None:
        """Recomputes every statistic from the current words."""
        weighted: dict[Word, int] = defaultdict(int)
        self.symbol_counts = Counter()
        self.where = defaultdict(set)
        for index, (word, freq) in enumerate(zip(self.words, self.freqs)):
            weighted[word] += freq
            for symbol in word:
                self.symbol_counts[symbol] += freq
            for pair in self._pairs(word):
                self.where[pair].add(index)
        self.pair_counts = count_pairs(weighted, self.mode, self.space_symbol)

    def rewrite(self, left: str, right: str) -> set[Pair]:
        """Applies a merge to the affected words, updating counts by delta.

        Returns the pairs whose counts changed.
        """
        changed: set[Pair] = set()
        for index in sorted(self.where.pop((left, right), ())):
            word = self.words[index]
            merged = merge_word(word, left, right)
            if merged == word:
                continue
            freq = self.freqs[index]
            for pair in self._pairs(word):
                self.pair_counts[pair] -= freq
                changed.add(pair)
            for symbol in word:
                self.symbol_counts[symbol] -= freq
            for pair in self._pairs(merged):
                self.pair_counts[pair] += freq
                self.where[pair].add(index)
                changed.add(pair)
            for symbol in merged:
                self.symbol_counts[symbol] += freq
            self.words[index] = merged
        for pair in changed:
            if self.pair_counts[pair] <= 0:
                del self.pair_counts[pair]
        for symbol in [s for s, n in self.symbol_counts.items() if n <= 0]:
            del self.symbol_counts[symbol]
        return changed


# Ordering key: the smallest key is merged next.
SelectionKey = tuple[float, str, str]


def frequency_key(state: MergeState, pair: Pair) -> SelectionKey:
    return (-state.pair_counts[pair], pair[0] + pair[1], pair[0])


class PairSelector:
    """Picks the next pair to merge; BPE ranks by raw pair frequency."""

    def __init__(self, state: MergeState) -> None:
        self.state = state

    def key(self, pair: Pair) -> SelectionKey:
        return frequency_key(self.state, pair)

    def best(self) -> Optional[Pair]:
        """Returns the best pair with at least MIN_PAIR_COUNT occurrences."""
        candidates = [
            p for p, n in self.state.pair_counts.items() if n >= MIN_PAIR_COUNT
        ]
        if not candidates:
            return None
        return min(candidates, key=self.key)

    def update(self, changed: Iterable[Pair]) -> None:
        """Told which pair counts changed after a merge."""


class HeapPairSelector(PairSelector):
    """Frequency selection backed by a lazily invalidated heap."""

    def __init__(self, state: MergeState) -> None:
        super().__init__(state)
        self.heap: list[tuple[SelectionKey, Pair]] = [
            (self.key(pair), pair) for pair in state.pair_counts
        ]
        heapq.heapify(self.heap)

    def best(self) -> Optional[Pair]:
        while self.heap:
            key, pair = self.heap[0]
            count = self.state.pair_counts.get(pair, 0)
            if count > 0 and key == self.key(pair):
                return pair if count >= MIN_PAIR_COUNT else None
            heapq.heappop(self.heap)
        return None

    def update(self, changed: Iterable[Pair]) -> None:
        for pair in changed:
            if pair in self.state.pair_counts:
                heapq.heappush(self.heap, (self.key(pair), pair))


SelectorFactory = Callable[[MergeState, bool], PairSelector]


def frequency_selector(state: MergeState, incremental: bool) -> PairSelector:
    return HeapPairSelector(state) if incremental else PairSelector(state)


def corpus_alphabet(corpus: Corpus) -> list[str]:
    """Characters of the corpus plus the space symbol, in code point order."""
    return sorted(corpus.alphabet | {corpus.space_symbol})


def check_target_size(target_size: int, alphabet: Sequence[str]) -> None:
    minimum = len(alphabet) + len(SPECIAL_TOKENS)
    if target_size < minimum:
        raise ConfigError(
            f"Vocabulary size {target_size} is below the minimum of {minimum} "
            f"({len(alphabet)} characters + {len(SPECIAL_TOKENS)} specials)."
        )


def resolve_mode(corpus: Corpus, mode: Optional[SpaceMode]) -> SpaceMode:
    if mode is None:
        return corpus.space_mode
    if mode.isolated != corpus.space_mode.isolated:
        raise ConfigError(
            f"Corpus was normalized in {corpus.space_mode.value} mode, "
            f"not {mode.value}."
        )
    return mode


def learn_merges(
    corpus: Corpus,
    target_size: int,
    mode: SpaceMode,
    selector_factory: SelectorFactory,
    strategy: Optional[RewriteStrategy] = None,
    workqueue: Optional[BaseWorkQueue] = None,
) -> tuple[list[str], list[MergeRule]]:
    """The merge loop shared by BPE and WordPiece.

    Returns the alphabet and the ordered merges. Training stops once the
    vocabulary (specials, alphabet and distinct merged tokens) reaches
    target_size, or when no eligible pair occurs MIN_PAIR_COUNT times.
    """
    alphabet = corpus_alphabet(corpus)
    check_target_size(target_size, alphabet)
    vocab = set(SPECIAL_TOKENS) | set(alphabet)

    counts = corpus.pretoken_counts
    if strategy is None:
        strategy = (
            RewriteStrategy.INCREMENTAL
            if len(counts) > EXACT_RECOUNT_LIMIT
            else RewriteStrategy.EXACT
        )
    incremental = strategy is RewriteStrategy.INCREMENTAL
    state = MergeState(counts, mode, corpus.space_symbol, workqueue)
    selector = selector_factory(state, incremental)
    logger().info(
        "Learning merges: %d distinct pretokens, %d characters, target %d, %s",
        len(counts),
        len(alphabet),
        target_size,
        strategy.value,
    )

    merges: list[MergeRule] = []
    with tqdm(
        total=target_size - len(vocab), desc="merges", unit="tok", disable=None
    ) as progress:
        while len(vocab) < target_size:
            pair = selector.best()
            if pair is None:
                logger().info("No pair occurs %d times; stopping.", MIN_PAIR_COUNT)
                break
            rule = MergeRule(pair[0], pair[1], len(merges))
            logger().debug(
                "merge %d: %r + %r (%d)",
                rule.rank,
                rule.left,
                rule.right,
                state.pair_counts[pair],
            )
            merges.append(rule)
            if rule.token not in vocab:
                vocab.add(rule.token)
                progress.update()
            if incremental:
                selector.update(state.rewrite(*pair))
            else:
                state.words = [merge_word(w, *pair) for w in state.words]
                state.recount()
    logger().info("Learned %d merges; vocabulary size %d", len(merges), len(vocab))
    return alphabet, merges


class BpeModel(SubwordModel):
    """A BPE merge list. Tokenization applies merges in rank order."""

    algorithm = Algorithm.BPE

    def __init__(
        self,
        alphabet: Sequence[str],
        merges: Sequence[MergeRule],
        space_mode: SpaceMode,
        norm: NormConfig = NormConfig(),
        target_size: Optional[int] = None,
    ) -> None:
        super().__init__(space_mode, norm, target_size)
        self.alphabet = tuple(alphabet)
        self.merges = tuple(merges)
        for index, rule in enumerate(self.merges):
            assert rule.rank == index, f"merge ranks must be contiguous: {rule}"
        self.ranks: dict[Pair, int] = {}
        for rule in self.merges:
            self.ranks.setdefault((rule.left, rule.right), rule.rank)
        self._cache: dict[str, Word] = {}

    @property
    def pieces(self) -> list[str]:
        return list(self.alphabet) + [rule.token for rule in self.merges]

    @property
    def num_entries(self) -> int:
        return len(self.merges)

    def split_pretoken(self, pretoken: str) -> list[str]:
        cached = self._cache.get(pretoken)
        if cached is not None:
            return list(cached)
        symbols: Word = tuple(pretoken)
        while len(symbols) > 1:
            best: Optional[int] = None
            for pair in zip(symbols, symbols[1:]):
                rank = self.ranks.get(pair)
                if rank is not None and (best is None or rank < best):
                    best = rank
            if best is None:
                break
            rule = self.merges[best]
            symbols = merge_word(symbols, rule.left, rule.right)
        if len(self._cache) < CACHE_LIMIT:
            self._cache[pretoken] = symbols
        return list(symbols)


def train_bpe(
    corpus: Corpus,
    target_size: int,
    mode: Optional[SpaceMode] = None,
    norm: Optional[NormConfig] = None,
    strategy: Optional[RewriteStrategy] = None,
    workqueue: Optional[BaseWorkQueue] = None,
) -> BpeModel:
    """Trains a BPE model with at most target_size tokens, specials included."""
    mode = resolve_mode(corpus, mode)
    if norm is None:
        norm = NormConfig(space_symbol=corpus.space_symbol)
    alphabet, merges = learn_merges(
        corpus, target_size, mode, frequency_selector, strategy, workqueue
    )
    return BpeModel(alphabet, merges, mode, norm, target_size)


def tokenize_bpe(
    model: BpeModel, text: str | bytes, mode: Optional[SpaceMode] = None
) -> Tokenisation:
    """Tokenizes one line by applying the merges in rank order."""
    return model.tokenize_in_mode(text, mode)
