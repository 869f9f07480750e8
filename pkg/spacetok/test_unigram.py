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
"""Tests for spacetok.unigram."""
import itertools
import math
import random
import unittest
from collections.abc import Iterator, Mapping
from typing import Optional

from spacetok.errors import ConfigError, CoverageError
from spacetok.modelfile import dumps
from spacetok.testing import random_small_corpus
from spacetok.textnorm import Corpus, SpaceMode, normalize_corpus
from spacetok.unigram import (
    UnigramModel,
    UnigramTrainConfig,
    canonical_order,
    corpus_log_likelihood,
    em_step,
    logsumexp,
    normalize_logprobs,
    prune_vocabulary,
    pruning_losses,
    seed_vocabulary,
    train_unigram,
    viterbi_segment,
    viterbi_tokenize,
    word_log_likelihood,
)
from spacetok.vocab import SPECIAL_TOKENS
from spacetok.workqueue import ProcessPoolWorkQueue

CFG = UnigramTrainConfig()


def segmentations(
    word: str, logprobs: Mapping[str, float], max_length: int
) -> Iterator[list[str]]:
    """Every segmentation Viterbi may choose from, unknown characters included."""
    if not word:
        yield []
        return
    for end in range(1, min(len(word), max_length) + 1):
        piece = word[:end]
        if piece in logprobs or end == 1:
            for rest in segmentations(word[end:], logprobs, max_length):
                yield [piece] + rest


def exhaustive_best(
    word: str, logprobs: Mapping[str, float], unk_score: float
) -> list[str]:
    max_length = max(len(p) for p in logprobs)
    best: Optional[tuple[float, int, list[int]]] = None
    best_seg: list[str] = []
    for seg in segmentations(word, logprobs, max_length):
        score = sum(logprobs.get(p, unk_score) for p in seg)
        key = (score, -len(seg), [len(p) for p in seg])
        if best is None or key > best:
            best = key
            best_seg = seg
    return best_seg


class HelpersTest(unittest.TestCase):
    def test_logsumexp(self) -> None:
        self.assertAlmostEqual(math.log(3.0), logsumexp([0.0, 0.0, 0.0]))
        self.assertEqual(float("-inf"), logsumexp([]))
        self.assertAlmostEqual(1000.0 + math.log(2.0), logsumexp([1000.0, 1000.0]))

    def test_normalize_logprobs(self) -> None:
        logprobs = normalize_logprobs({"a": 3.0, "b": 1.0, "c": 0.0})
        self.assertAlmostEqual(math.log(0.75), logprobs["a"])
        self.assertAlmostEqual(math.log(0.25), logprobs["b"])
        self.assertTrue(math.isfinite(logprobs["c"]))

    def test_canonical_order(self) -> None:
        logprobs = {"ab": -2.0, "b": -1.0, "ba": -1.0, "a": -3.0, "ca": -1.0}
        order = canonical_order(logprobs)
        self.assertEqual(["a", "b", "ba", "ca", "ab"], list(order))

    def test_config_validation(self) -> None:
        with self.assertRaises(ConfigError):
            UnigramTrainConfig(shrink_factor=1.0)
        with self.assertRaises(ConfigError):
            UnigramTrainConfig(max_piece_length=0)
        with self.assertRaises(ConfigError):
            UnigramTrainConfig(em_iterations_per_round=0)
        self.assertEqual(10, UnigramTrainConfig(target_size=15).piece_budget)


class SeedVocabularyTest(unittest.TestCase):
    def test_isolated(self) -> None:
        corpus = normalize_corpus(["ab ab"], SpaceMode.ISOLATED)
        self.assertEqual(
            {"a": 2, "b": 2, "ab": 2, "▁": 1}, dict(seed_vocabulary(corpus, CFG))
        )

    def test_attached(self) -> None:
        corpus = normalize_corpus(["ab"], SpaceMode.ATTACHED)
        seed = seed_vocabulary(corpus, CFG)
        self.assertIn("▁ab", seed)
        self.assertIn("▁a", seed)
        self.assertNotIn("a▁", seed)

    def test_single_characters_only(self) -> None:
        corpus = normalize_corpus(["ab ba"], SpaceMode.ISOLATED)
        seed = seed_vocabulary(corpus, UnigramTrainConfig(max_piece_length=1))
        self.assertEqual({"a", "b", "▁"}, set(seed))

    def test_space_symbol_always_seeded(self) -> None:
        corpus = normalize_corpus(["ab"], SpaceMode.ISOLATED)
        self.assertEqual(0, seed_vocabulary(corpus, CFG)["▁"])

    def test_seed_size_caps_longer_pieces(self) -> None:
        corpus = normalize_corpus(["abc abc ab"], SpaceMode.ISOLATED)
        seed = seed_vocabulary(corpus, UnigramTrainConfig(seed_size=5))
        self.assertEqual({"a", "b", "c", "▁", "ab"}, set(seed))

    def test_empty_corpus(self) -> None:
        with self.assertRaises(ConfigError):
            seed_vocabulary(normalize_corpus([""], SpaceMode.ISOLATED), CFG)


class EmStepTest(unittest.TestCase):
    def test_single_piece(self) -> None:
        corpus = normalize_corpus(["aa"], SpaceMode.ISOLATED)
        model = UnigramModel({"a": -5.0}, SpaceMode.ISOLATED)
        updated = em_step(model, corpus)
        self.assertAlmostEqual(0.0, updated.logprobs["a"])
        self.assertEqual(1, updated.em_iterations)

    def test_expected_counts_by_hand(self) -> None:
        corpus = normalize_corpus(["aa"], SpaceMode.ISOLATED)
        model = UnigramModel(
            {"a": math.log(0.8), "aa": math.log(0.2)}, SpaceMode.ISOLATED
        )
        updated = em_step(model, corpus)
        self.assertAlmostEqual(1.28 / 1.48, math.exp(updated.logprobs["a"]))
        self.assertAlmostEqual(0.2 / 1.48, math.exp(updated.logprobs["aa"]))

    def test_empty_corpus(self) -> None:
        model = UnigramModel({"a": 0.0}, SpaceMode.ISOLATED)
        corpus = normalize_corpus([""], SpaceMode.ISOLATED)
        self.assertIs(model, em_step(model, corpus))
        self.assertEqual(0, model.em_iterations)

    def test_uncovered_word(self) -> None:
        model = UnigramModel({"a": 0.0}, SpaceMode.ISOLATED)
        with self.assertRaises(CoverageError):
            em_step(model, normalize_corpus(["ab"], SpaceMode.ISOLATED))

    def test_word_log_likelihood(self) -> None:
        logprobs = {"a": math.log(0.8), "aa": math.log(0.2)}
        self.assertAlmostEqual(math.log(0.84), word_log_likelihood("aa", logprobs, 2))

    def test_likelihood_never_decreases(self) -> None:
        rng = random.Random(7)
        for _ in range(50):
            mode = rng.choice([SpaceMode.ATTACHED, SpaceMode.ISOLATED])
            corpus = normalize_corpus(random_small_corpus(rng), mode)
            if corpus.num_pretokens == 0:
                continue
            seed = seed_vocabulary(corpus, CFG)
            model = UnigramModel(normalize_logprobs(seed), mode)
            previous = corpus_log_likelihood(model, corpus)
            for _ in range(10):
                model = em_step(model, corpus)
                self.assertAlmostEqual(1.0, model.probability_mass(), delta=1e-6)
                current = corpus_log_likelihood(model, corpus)
                self.assertGreaterEqual(current, previous - 1e-9 * abs(previous))
                previous = current


class ViterbiTest(unittest.TestCase):
    def test_whole_piece_wins(self) -> None:
        logprobs = {"a": -1.0, "b": -1.0, "ab": -1.5}
        self.assertEqual(["ab"], viterbi_segment("ab", logprobs, 2, -11.0))

    def test_characters_win(self) -> None:
        logprobs = {"a": -1.0, "b": -1.0, "ab": -2.5}
        self.assertEqual(["a", "b"], viterbi_segment("ab", logprobs, 2, -11.0))

    def test_fewer_pieces_break_ties(self) -> None:
        logprobs = {"a": -1.0, "b": -1.0, "ab": -2.0}
        self.assertEqual(["ab"], viterbi_segment("ab", logprobs, 2, -11.0))

    def test_leftmost_longest_breaks_ties(self) -> None:
        logprobs = {"a": -1.0, "b": -1.0, "c": -1.0, "ab": -1.0, "bc": -1.0}
        self.assertEqual(["ab", "c"], viterbi_segment("abc", logprobs, 2, -11.0))

    def test_unknown_character(self) -> None:
        model = UnigramModel({"a": 0.0}, SpaceMode.ISOLATED)
        tokens = model.tokenize("az")
        self.assertEqual(("a", "[UNK]"), tokens.tokens)
        self.assertEqual(("a", "z"), tokens.surfaces)
        self.assertEqual(-10.0, model.unk_score)

    def test_exclude(self) -> None:
        logprobs = {"a": -1.0, "b": -1.0, "ab": -0.5}
        self.assertEqual(["a", "b"], viterbi_segment("ab", logprobs, 2, -11.0, "ab"))

    def test_matches_exhaustive_search(self) -> None:
        rng = random.Random(8)
        candidates = [
            "".join(p) for n in (1, 2, 3, 4) for p in itertools.product("abc", repeat=n)
        ]
        for _ in range(400):
            pieces = rng.sample(candidates, rng.randint(1, 16))
            logprobs = {p: -rng.randint(1, 16) / 4 for p in pieces}
            unk_score = min(logprobs.values()) - 10
            max_length = max(len(p) for p in logprobs)
            word = "".join(rng.choice("abcd") for _ in range(rng.randint(1, 12)))
            with self.subTest(word=word, logprobs=logprobs):
                self.assertEqual(
                    exhaustive_best(word, logprobs, unk_score),
                    viterbi_segment(word, logprobs, max_length, unk_score),
                )

    def test_space_score_does_not_matter(self) -> None:
        low = UnigramModel(
            {"a": -1.0, "b": -2.0, "ab": -2.5, "▁": -30.0}, SpaceMode.ISOLATED
        )
        high = UnigramModel(
            {"a": -1.0, "b": -2.0, "ab": -2.5, "▁": -0.1}, SpaceMode.ISOLATED
        )
        for text in ["ab ab", "a b ab", "ba  a"]:
            self.assertEqual(low.tokenize(text).tokens, high.tokenize(text).tokens)

    def test_no_spaces_mode(self) -> None:
        model = UnigramModel(
            {"a": -1.0, "b": -1.0, "ab": -1.5, "▁": -1.0}, SpaceMode.ISOLATED
        )
        tokens = viterbi_tokenize(model, "ab ab", SpaceMode.ISOLATED_NO_SPACES)
        self.assertEqual(("ab", "ab"), tokens.tokens)
        self.assertEqual(("ab", "▁", "ab"), viterbi_tokenize(model, "ab ab").tokens)

    def test_mode_mismatch(self) -> None:
        model = UnigramModel({"a": 0.0, "▁": -1.0}, SpaceMode.ATTACHED)
        with self.assertRaises(ConfigError):
            viterbi_tokenize(model, "a a", SpaceMode.ISOLATED)


class PruneTest(unittest.TestCase):
    def setUp(self) -> None:
        self.corpus = normalize_corpus(["ab"], SpaceMode.ISOLATED)
        self.model = UnigramModel(
            {
                "a": math.log(0.25),
                "b": math.log(0.25),
                "ab": math.log(0.4),
                "ba": math.log(0.1),
            },
            SpaceMode.ISOLATED,
        )

    def test_unused_piece_costs_nothing(self) -> None:
        losses = pruning_losses(self.model, self.corpus)
        self.assertEqual({"ab", "ba"}, set(losses))
        self.assertEqual(0.0, losses["ba"])
        self.assertGreater(losses["ab"], 0.0)

    def test_unused_piece_pruned_first(self) -> None:
        cfg = UnigramTrainConfig(target_size=3 + len(SPECIAL_TOKENS))
        pruned = prune_vocabulary(self.model, self.corpus, cfg)
        self.assertEqual({"a", "b", "ab"}, set(pruned.logprobs))
        self.assertAlmostEqual(1.0, pruned.probability_mass())

    def test_characters_are_protected(self) -> None:
        model = UnigramModel(
            {"a": math.log(0.1), "b": math.log(0.1), "ab": math.log(0.8)},
            SpaceMode.ISOLATED,
        )
        cfg = UnigramTrainConfig(target_size=2 + len(SPECIAL_TOKENS))
        corpus = normalize_corpus(["ab"] * 10, SpaceMode.ISOLATED)
        pruned = prune_vocabulary(model, corpus, cfg)
        self.assertEqual({"a", "b"}, set(pruned.logprobs))

    def test_at_target_unchanged(self) -> None:
        cfg = UnigramTrainConfig(target_size=4 + len(SPECIAL_TOKENS))
        self.assertIs(self.model, prune_vocabulary(self.model, self.corpus, cfg))


def removal_losses(model: UnigramModel, corpus: Corpus) -> dict[str, float]:
    """Exact likelihood lost by dropping each multi-character piece."""
    full = corpus_log_likelihood(model, corpus)
    losses: dict[str, float] = {}
    for piece in model.logprobs:
        if len(piece) == 1:
            continue
        kept = {p: lp for p, lp in model.logprobs.items() if p != piece}
        log_mass = logsumexp(list(kept.values()))
        reduced = model.with_logprobs({p: lp - log_mass for p, lp in kept.items()})
        losses[piece] = full - corpus_log_likelihood(reduced, corpus)
    return losses


def ranking(losses: Mapping[str, float]) -> list[str]:
    return sorted(losses, key=lambda piece: (losses[piece], piece))


class PruneAgainstRemovalTest(unittest.TestCase):
    def setUp(self) -> None:
        self.corpus = normalize_corpus(["ab"] * 10 + ["cd"] * 2, SpaceMode.ISOLATED)
        probabilities = {"a": 0.1, "b": 0.1, "c": 0.1, "d": 0.1}
        probabilities.update({"ab": 0.35, "cd": 0.15, "ba": 0.1})
        self.model = UnigramModel(
            {p: math.log(q) for p, q in probabilities.items()}, SpaceMode.ISOLATED
        )

    def test_same_ranking(self) -> None:
        exact = removal_losses(self.model, self.corpus)
        self.assertEqual(["ba", "cd", "ab"], ranking(exact))
        estimated = pruning_losses(self.model, self.corpus)
        self.assertEqual(ranking(exact), ranking(estimated))
        # Dropping an unused piece frees mass for the others.
        self.assertLess(exact["ba"], 0.0)

    def test_prunes_cheapest_removal(self) -> None:
        exact = removal_losses(self.model, self.corpus)
        cfg = UnigramTrainConfig(target_size=6 + len(SPECIAL_TOKENS))
        pruned = prune_vocabulary(self.model, self.corpus, cfg)
        removed = set(self.model.logprobs) - set(pruned.logprobs)
        self.assertEqual({ranking(exact)[0]}, removed)


class TrainUnigramTest(unittest.TestCase):
    def test_dominant_piece(self) -> None:
        corpus = normalize_corpus(["ab"] * 1000, SpaceMode.ISOLATED)
        cfg = UnigramTrainConfig(target_size=3 + len(SPECIAL_TOKENS) + 1)
        model = train_unigram(corpus, cfg)
        self.assertEqual(["a", "b", "▁", "ab"], model.pieces)
        self.assertGreater(model.logprobs["ab"], model.logprobs["a"])
        self.assertEqual(("ab",), model.tokenize("ab").tokens)

    def test_character_vocabulary(self) -> None:
        corpus = normalize_corpus(["ab ba", "abba"], SpaceMode.ISOLATED)
        cfg = UnigramTrainConfig(target_size=3 + len(SPECIAL_TOKENS))
        model = train_unigram(corpus, cfg)
        self.assertEqual(list(SPECIAL_TOKENS) + ["a", "b", "▁"], model.vocab)
        self.assertAlmostEqual(1.0, model.probability_mass(), delta=1e-6)

    def test_below_minimum(self) -> None:
        corpus = normalize_corpus(["ab ba"], SpaceMode.ISOLATED)
        with self.assertRaises(ConfigError):
            train_unigram(corpus, UnigramTrainConfig(target_size=7))

    def test_mode_filter(self) -> None:
        lines = ["the cat sat on the mat", "a hat on a cat", "that cat"]
        cfg = UnigramTrainConfig(target_size=30)
        isolated = train_unigram(normalize_corpus(lines, SpaceMode.ISOLATED), cfg)
        attached = train_unigram(normalize_corpus(lines, SpaceMode.ATTACHED), cfg)
        for piece in isolated.pieces:
            self.assertTrue(piece == "▁" or "▁" not in piece)
        for piece in attached.pieces:
            self.assertNotIn("▁", piece[1:])
        self.assertLessEqual(isolated.vocab_size, 30)
        self.assertLessEqual(attached.vocab_size, 30)
        self.assertTrue(any(p.startswith("▁") and len(p) > 1 for p in attached.pieces))

    def test_deterministic(self) -> None:
        lines = random_small_corpus(random.Random(9), alphabet="abcde", size=2000)
        corpus = normalize_corpus(lines, SpaceMode.ATTACHED)
        cfg = UnigramTrainConfig(target_size=40)
        first = train_unigram(corpus, cfg)
        self.assertEqual(dumps(first), dumps(train_unigram(corpus, cfg)))
        with ProcessPoolWorkQueue(2) as workqueue:
            parallel = train_unigram(corpus, cfg, workqueue=workqueue)
        self.assertEqual(dumps(first), dumps(parallel))


if __name__ == "__main__":
    unittest.main()
