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
"""Unigram language model tokenisation.

A unigram model scores a segmentation as the sum of its pieces' log
probabilities. Training seeds a large candidate vocabulary of substrings,
fits probabilities with EM over every segmentation of every pretoken, and
prunes the pieces whose removal costs the corpus least likelihood until the
vocabulary fits. Inference picks the best segmentation with Viterbi.

Spaces never need a special score: pretokenization already puts every space
in its own pretoken (isolated mode) or at the start of a word (attached
mode), so no lattice ever has a choice to make about them.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt
from tqdm import tqdm

from spacetok.config import DEFAULT_VOCAB_SIZE, Algorithm
from spacetok.errors import ConfigError, CoverageError
from spacetok.model import SubwordModel
from spacetok.textnorm import Corpus, NormConfig, SpaceMode
from spacetok.vocab import SPECIAL_TOKENS, Tokenisation
from spacetok.workqueue import BaseWorkQueue, BasicWorkQueue, shard

# Score of an unknown character relative to the least likely piece.
UNK_PENALTY = 10.0

CACHE_LIMIT = 1 << 18

NEG_INF = float("-inf")

WordCounts = list[tuple[str, int]]


def logger() -> logging.Logger:
    """Returns the module logger."""
    return logging.getLogger(__name__)


@dataclass(frozen=True)
class UnigramTrainConfig:
    target_size: int = DEFAULT_VOCAB_SIZE
    seed_size: int = 1_000_000
    max_piece_length: int = 16
    em_iterations_per_round: int = 2
    shrink_factor: float = 0.75

    def __post_init__(self) -> None:
        if not 0 < self.shrink_factor < 1:
            raise ConfigError(
                f"shrink_factor must be in (0, 1), not {self.shrink_factor}"
            )
        if self.max_piece_length < 1:
            raise ConfigError("max_piece_length must be at least 1.")
        if self.seed_size < 1:
            raise ConfigError("seed_size must be at least 1.")
        if self.em_iterations_per_round < 1:
            raise ConfigError("em_iterations_per_round must be at least 1.")

    @property
    def piece_budget(self) -> int:
        """Pieces allowed once the reserved specials are accounted for."""
        return self.target_size - len(SPECIAL_TOKENS)


def logsumexp(values: Sequence[float]) -> float:
    """log(sum(exp(v))) without overflow; -inf for no finite values."""
    peak = max(values, default=NEG_INF)
    if peak == NEG_INF:
        return NEG_INF
    return peak + math.log(math.fsum(math.exp(v - peak) for v in values))


def canonical_order(logprobs: Mapping[str, float]) -> dict[str, float]:
    """Orders pieces for ID assignment.

    Single characters come first by code point, then longer pieces from most
    to least probable, ties broken lexicographically.
    """
    chars = sorted(p for p in logprobs if len(p) == 1)
    longer = sorted(
        (p for p in logprobs if len(p) > 1), key=lambda p: (-logprobs[p], p)
    )
    return {p: logprobs[p] for p in chars + longer}


def normalize_logprobs(counts: Mapping[str, float]) -> dict[str, float]:
    """Turns non-negative counts into log probabilities.

    Counts are floored at the smallest positive double so that a piece with
    no mass keeps a finite (if negligible) score.
    """
    pieces = list(counts)
    values = np.maximum(
        np.fromiter((counts[p] for p in pieces), dtype=np.float64, count=len(pieces)),
        np.finfo(np.float64).tiny,
    )
    logs = np.log(values) - np.log(values.sum())
    return {p: float(lp) for p, lp in zip(pieces, logs)}


class UnigramModel(SubwordModel):
    """Pieces with natural-log probabilities.

    Piece order is kept as given; it determines the ID of every piece.
    """

    algorithm = Algorithm.UNIGRAM

    def __init__(
        self,
        logprobs: Mapping[str, float],
        space_mode: SpaceMode,
        norm: NormConfig = NormConfig(),
        target_size: Optional[int] = None,
        em_iterations: int = 0,
    ) -> None:
        super().__init__(space_mode, norm, target_size)
        self.logprobs: dict[str, float] = dict(logprobs)
        self.em_iterations = em_iterations
        self.max_piece_length = max((len(p) for p in self.logprobs), default=1)
        self.unk_score = min(self.logprobs.values(), default=0.0) - UNK_PENALTY
        self._cache: dict[str, tuple[str, ...]] = {}

    @property
    def pieces(self) -> list[str]:
        return list(self.logprobs)

    @property
    def num_entries(self) -> int:
        return len(self.logprobs)

    def with_logprobs(
        self, logprobs: Mapping[str, float], em_iterations: Optional[int] = None
    ) -> UnigramModel:
        return UnigramModel(
            logprobs,
            self.space_mode,
            self.norm,
            self.target_size,
            self.em_iterations if em_iterations is None else em_iterations,
        )

    def probability_mass(self) -> float:
        return math.fsum(math.exp(lp) for lp in self.logprobs.values())

    def split_pretoken(self, pretoken: str) -> list[str]:
        cached = self._cache.get(pretoken)
        if cached is None:
            cached = tuple(
                viterbi_segment(
                    pretoken, self.logprobs, self.max_piece_length, self.unk_score
                )
            )
            if len(self._cache) < CACHE_LIMIT:
                self._cache[pretoken] = cached
        return list(cached)

    def score(self, pieces: Iterable[str]) -> float:
        return sum(self.logprobs.get(p, self.unk_score) for p in pieces)


def viterbi_segment(
    word: str,
    logprobs: Mapping[str, float],
    max_piece_length: int,
    unk_score: float,
    exclude: Optional[str] = None,
) -> list[str]:
    """Returns the best segmentation of word.

    The best segmentation has the highest total log probability. Among equal
    scores, fewer pieces win, then the segmentation whose piece lengths read
    left to right are lexicographically largest (leftmost-longest). A single
    character missing from logprobs may be used with unk_score. exclude names
    one piece that may not be used.

    The search runs right to left so that every tie rule is decided by the
    first piece alone.

    >>> viterbi_segment("ab", {"a": -1.0, "b": -1.0, "ab": -1.5}, 2, -11.0)
    ['ab']
    >>> viterbi_segment("ab", {"a": -1.0, "b": -1.0, "ab": -2.5}, 2, -11.0)
    ['a', 'b']
    """
    n = len(word)
    # best[i] = (score, -num_pieces, first piece end) of the best suffix from i.
    best: list[Optional[tuple[float, int, int]]] = [None] * (n + 1)
    best[n] = (0.0, 0, n)
    for i in range(n - 1, -1, -1):
        choice: Optional[tuple[float, int, int]] = None
        for j in range(min(n, i + max_piece_length), i, -1):
            rest = best[j]
            if rest is None:
                continue
            piece = word[i:j]
            if piece == exclude:
                continue
            lp = logprobs.get(piece)
            if lp is None:
                if j != i + 1:
                    continue
                lp = unk_score
            candidate = (lp + rest[0], rest[1] - 1, j)
            # j falls as the loop runs, so equal (score, count) keeps the
            # longer first piece.
            if choice is None or candidate[:2] > choice[:2]:
                choice = candidate
        best[i] = choice
    pieces: list[str] = []
    i = 0
    while i < n:
        step = best[i]
        assert step is not None
        pieces.append(word[i : step[2]])
        i = step[2]
    return pieces


def viterbi_tokenize(
    model: UnigramModel, text: str | bytes, mode: Optional[SpaceMode] = None
) -> Tokenisation:
    """Tokenizes one line with the model's best segmentation."""
    return model.tokenize_in_mode(text, mode)


def _piece_allowed(piece: str, mode: SpaceMode, space_symbol: str) -> bool:
    if len(piece) == 1:
        return True
    if mode.isolated:
        return space_symbol not in piece
    return space_symbol not in piece[1:]


_SeedInput = tuple[WordCounts, int, SpaceMode, str]


def _count_substrings(item: _SeedInput) -> Counter[str]:
    words, max_length, mode, space_symbol = item
    counts: Counter[str] = Counter()
    for word, freq in words:
        for i in range(len(word)):
            for j in range(i + 1, min(len(word), i + max_length) + 1):
                piece = word[i:j]
                if _piece_allowed(piece, mode, space_symbol):
                    counts[piece] += freq
    return counts


def _sorted_words(corpus: Corpus) -> WordCounts:
    return sorted(corpus.pretoken_counts.items())


def seed_vocabulary(
    corpus: Corpus,
    cfg: UnigramTrainConfig,
    mode: Optional[SpaceMode] = None,
    workqueue: Optional[BaseWorkQueue] = None,
) -> Counter[str]:
    """Returns candidate pieces with their occurrence counts.

    Candidates are substrings of pretokens up to cfg.max_piece_length. Every
    single character is kept, and so is the space symbol even when the corpus
    has no spaces. Longer candidates are capped at cfg.seed_size, keeping the
    most frequent and breaking ties lexicographically.
    """
    if corpus.num_pretokens == 0:
        raise ConfigError("Cannot train a unigram model on an empty corpus.")
    mode = corpus.space_mode if mode is None else mode
    if workqueue is None:
        workqueue = BasicWorkQueue()
    symbol = corpus.space_symbol
    counts: Counter[str] = Counter()
    inputs = [
        (chunk, cfg.max_piece_length, mode, symbol)
        for chunk in shard(_sorted_words(corpus))
    ]
    for partial in workqueue.map_ordered(_count_substrings, inputs):
        counts.update(partial)

    chars = {p: n for p, n in counts.items() if len(p) == 1}
    chars.setdefault(symbol, 0)
    longer = sorted(
        ((p, n) for p, n in counts.items() if len(p) > 1), key=lambda e: (-e[1], e[0])
    )
    room = max(0, cfg.seed_size - len(chars))
    seed: Counter[str] = Counter(chars)
    seed.update(dict(longer[:room]))
    logger().info(
        "Seeded %d candidates (%d characters, %d of %d substrings)",
        len(seed),
        len(chars),
        min(room, len(longer)),
        len(longer),
    )
    return seed


def _lattice(
    word: str, logprobs: Mapping[str, float], max_piece_length: int
) -> list[list[tuple[int, str, float]]]:
    """ends[j] lists the (start, piece, logprob) edges ending at j."""
    n = len(word)
    ends: list[list[tuple[int, str, float]]] = [[] for _ in range(n + 1)]
    for i in range(n):
        for j in range(i + 1, min(n, i + max_piece_length) + 1):
            piece = word[i:j]
            lp = logprobs.get(piece)
            if lp is not None:
                ends[j].append((i, piece, lp))
    return ends


def _forward(ends: list[list[tuple[int, str, float]]]) -> list[float]:
    alpha = [NEG_INF] * len(ends)
    alpha[0] = 0.0
    for j in range(1, len(ends)):
        alpha[j] = logsumexp([alpha[i] + lp for i, _, lp in ends[j]])
    return alpha


def word_log_likelihood(
    word: str, logprobs: Mapping[str, float], max_piece_length: int
) -> float:
    """Log of the total probability of every segmentation of word."""
    return _forward(_lattice(word, logprobs, max_piece_length))[-1]


_EStepInput = tuple[dict[str, float], int, WordCounts]
_EStepOutput = tuple[dict[str, float], float, Optional[str]]


def _expected_counts(item: _EStepInput) -> _EStepOutput:
    """Forward-backward over the lattice of every word in one shard.

    Returns expected piece counts, the shard's log likelihood and the first
    word that has no segmentation, if any.
    """
    logprobs, max_piece_length, words = item
    expected: dict[str, float] = {}
    likelihoods: list[float] = []
    for word, freq in words:
        ends = _lattice(word, logprobs, max_piece_length)
        alpha = _forward(ends)
        total = alpha[-1]
        if total == NEG_INF:
            return expected, NEG_INF, word
        n = len(word)
        beta = [NEG_INF] * (n + 1)
        beta[n] = 0.0
        starts: list[list[tuple[int, str, float]]] = [[] for _ in range(n + 1)]
        for j in range(n + 1):
            for i, piece, lp in ends[j]:
                starts[i].append((j, piece, lp))
        for i in range(n - 1, -1, -1):
            beta[i] = logsumexp([lp + beta[j] for j, _, lp in starts[i]])
        for j in range(1, n + 1):
            for i, piece, lp in ends[j]:
                posterior = math.exp(alpha[i] + lp + beta[j] - total)
                if posterior > 0.0:
                    expected[piece] = expected.get(piece, 0.0) + freq * posterior
        likelihoods.append(freq * total)
    return expected, math.fsum(likelihoods), None


def _run_estep(
    model: UnigramModel, corpus: Corpus, workqueue: Optional[BaseWorkQueue]
) -> tuple[npt.NDArray[np.float64], float]:
    if workqueue is None:
        workqueue = BasicWorkQueue()
    inputs = [
        (model.logprobs, model.max_piece_length, chunk)
        for chunk in shard(_sorted_words(corpus))
    ]
    index = {p: i for i, p in enumerate(model.logprobs)}
    expected = np.zeros(len(index), dtype=np.float64)
    likelihoods: list[float] = []
    for counts, likelihood, failed in workqueue.map_ordered(_expected_counts, inputs):
        if failed is not None:
            raise CoverageError(f"No segmentation of {failed!r} with these pieces.")
        for piece, value in counts.items():
            expected[index[piece]] += value
        likelihoods.append(likelihood)
    return expected, math.fsum(likelihoods)


def corpus_log_likelihood(
    model: UnigramModel, corpus: Corpus, workqueue: Optional[BaseWorkQueue] = None
) -> float:
    """Log likelihood of the corpus, summed over all segmentations."""
    return _run_estep(model, corpus, workqueue)[1]


def em_step(
    model: UnigramModel, corpus: Corpus, workqueue: Optional[BaseWorkQueue] = None
) -> UnigramModel:
    """One EM iteration.

    The E-step takes expected piece counts over all segmentations; the M-step
    sets each probability to its share of the expected total. A corpus with
    no pretokens leaves the model as it is.
    """
    if corpus.num_pretokens == 0:
        return model
    expected, likelihood = _run_estep(model, corpus, workqueue)
    logger().debug(
        "EM %d: log likelihood %.6f", model.em_iterations + 1, likelihood
    )
    logprobs = normalize_logprobs(dict(zip(model.logprobs, expected.tolist())))
    return model.with_logprobs(logprobs, model.em_iterations + 1)


_ViterbiInput = tuple[dict[str, float], int, float, WordCounts]


def _viterbi_counts(item: _ViterbiInput) -> tuple[Counter[str], Counter[str]]:
    """Per shard: piece frequency on best paths, and the words each piece is in."""
    logprobs, max_piece_length, unk_score, words = item
    freq: Counter[str] = Counter()
    coverage: Counter[str] = Counter()
    for word, count in words:
        pieces = viterbi_segment(word, logprobs, max_piece_length, unk_score)
        for piece in pieces:
            freq[piece] += count
        for piece in set(pieces):
            coverage[piece] += count
    return freq, coverage


def pruning_losses(
    model: UnigramModel, corpus: Corpus, workqueue: Optional[BaseWorkQueue] = None
) -> dict[str, float]:
    """Estimates the likelihood lost by removing each multi-character piece.

    Each piece is scored by how much less likely its best-path occurrences
    become when replaced by the best segmentation without it, weighted by
    the share of the corpus whose best path uses it. Pieces on no best path
    cost nothing.
    """
    if workqueue is None:
        workqueue = BasicWorkQueue()
    inputs = [
        (model.logprobs, model.max_piece_length, model.unk_score, chunk)
        for chunk in shard(_sorted_words(corpus))
    ]
    freq: Counter[str] = Counter()
    coverage: Counter[str] = Counter()
    for piece_freq, piece_coverage in workqueue.map_ordered(_viterbi_counts, inputs):
        freq.update(piece_freq)
        coverage.update(piece_coverage)

    total = sum(freq.values())
    num_words = corpus.num_pretokens
    losses: dict[str, float] = {}
    for piece in model.logprobs:
        if len(piece) == 1:
            continue
        count = freq[piece]
        if count == 0:
            losses[piece] = 0.0
            continue
        alternative = viterbi_segment(
            piece,
            model.logprobs,
            model.max_piece_length,
            model.unk_score,
            exclude=piece,
        )
        log_total = math.log(total)
        logprob_piece = math.log(count) - log_total
        log_total_alt = math.log(total + count * (len(alternative) - 1))
        logprob_alt = math.fsum(
            math.log(freq[alt] + count) - log_total_alt for alt in alternative
        )
        share = coverage[piece] / num_words
        losses[piece] = share * (logprob_piece - logprob_alt)
    return losses


def prune_vocabulary(
    model: UnigramModel,
    corpus: Corpus,
    cfg: UnigramTrainConfig,
    workqueue: Optional[BaseWorkQueue] = None,
) -> UnigramModel:
    """Removes the lowest-loss pieces.

    The model shrinks to max(budget, shrink_factor * size) pieces, where the
    budget is cfg.target_size less the specials. Single characters are
    never removed, so the result may stay above that size.
    """
    size = len(model.logprobs)
    goal = max(cfg.piece_budget, math.floor(cfg.shrink_factor * size))
    if size <= goal:
        return model
    losses = pruning_losses(model, corpus, workqueue)
    ranked = sorted(losses, key=lambda p: (losses[p], p))
    removed = set(ranked[: size - goal])
    logger().info(
        "Pruning %d of %d pieces (%d removable)", len(removed), size, len(losses)
    )
    kept = {p: lp for p, lp in model.logprobs.items() if p not in removed}
    log_mass = logsumexp(list(kept.values()))
    return model.with_logprobs({p: lp - log_mass for p, lp in kept.items()})


def train_unigram(
    corpus: Corpus,
    cfg: UnigramTrainConfig,
    mode: Optional[SpaceMode] = None,
    norm: Optional[NormConfig] = None,
    workqueue: Optional[BaseWorkQueue] = None,
) -> UnigramModel:
    """Seeds, then alternates EM rounds with pruning until the vocabulary fits."""
    mode = corpus.space_mode if mode is None else mode
    if mode.isolated != corpus.space_mode.isolated:
        raise ConfigError(
            f"Corpus was normalized in {corpus.space_mode.value} mode, "
            f"not {mode.value}."
        )
    if norm is None:
        norm = NormConfig(space_symbol=corpus.space_symbol)
    seed = seed_vocabulary(corpus, cfg, mode, workqueue)
    num_chars = sum(1 for p in seed if len(p) == 1)
    minimum = num_chars + len(SPECIAL_TOKENS)
    if cfg.target_size < minimum:
        raise ConfigError(
            f"Vocabulary size {cfg.target_size} is below the minimum of {minimum} "
            f"({num_chars} characters + {len(SPECIAL_TOKENS)} specials)."
        )
    model = UnigramModel(normalize_logprobs(seed), mode, norm, cfg.target_size)

    with tqdm(desc="pruning", unit="round", disable=None) as progress:
        while len(model.logprobs) > cfg.piece_budget:
            for _ in range(cfg.em_iterations_per_round):
                model = em_step(model, corpus, workqueue)
            pruned = prune_vocabulary(model, corpus, cfg, workqueue)
            progress.update()
            progress.set_postfix(pieces=len(pruned.logprobs))
            if len(pruned.logprobs) == len(model.logprobs):
                logger().warning(
                    "Only characters remain; stopping at %d pieces",
                    len(pruned.logprobs),
                )
                model = pruned
                break
            model = pruned
    for _ in range(cfg.em_iterations_per_round):
        model = em_step(model, corpus, workqueue)
    model = model.with_logprobs(canonical_order(model.logprobs))
    logger().info(
        "Trained unigram model: %d pieces after %d EM iterations",
        len(model.logprobs),
        model.em_iterations,
    )
    return model
