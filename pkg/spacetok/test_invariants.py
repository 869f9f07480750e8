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
"""Properties every tokeniser must hold on arbitrary text."""
import unittest

from spacetok.bpe import train_bpe
from spacetok.model import SubwordModel
from spacetok.testing import random_lines
from spacetok.textnorm import (
    NormConfig,
    SpaceMode,
    canonicalize,
    detokenize,
    normalize_corpus,
    pretokenize_line,
)
from spacetok.unigram import UnigramTrainConfig, train_unigram
from spacetok.wordpiece import train_wordpiece

TRAINING_LINES = random_lines(seed=10, count=500)
TEST_LINES = random_lines(seed=11, count=10_000)
VOCAB_SIZE = 200


def train_all(mode: SpaceMode) -> list[SubwordModel]:
    corpus = normalize_corpus(TRAINING_LINES, mode)
    return [
        train_bpe(corpus, VOCAB_SIZE),
        train_wordpiece(corpus, VOCAB_SIZE),
        train_unigram(corpus, UnigramTrainConfig(target_size=VOCAB_SIZE)),
    ]


class RoundTripTest(unittest.TestCase):
    def check_round_trip(self, mode: SpaceMode) -> None:
        cfg = NormConfig()
        for model in train_all(mode):
            self.assertLessEqual(model.vocab_size, VOCAB_SIZE)
            for line in TEST_LINES:
                tokens = model.tokenize(line)
                with self.subTest(algorithm=model.algorithm, line=line):
                    self.assertEqual(
                        canonicalize(line, cfg), detokenize(tokens, mode)
                    )
                    for surface in tokens.surfaces:
                        if mode is SpaceMode.ISOLATED:
                            self.assertTrue(surface == "▁" or "▁" not in surface)
                        else:
                            self.assertNotIn("▁", surface[1:])

    def test_attached(self) -> None:
        self.check_round_trip(SpaceMode.ATTACHED)

    def test_isolated(self) -> None:
        self.check_round_trip(SpaceMode.ISOLATED)

    def test_no_spaces_only_drops_spaces(self) -> None:
        for model in train_all(SpaceMode.ISOLATED):
            for line in TEST_LINES[:1000]:
                kept = model.tokenize(line)
                stripped = model.tokenize_pretokens(
                    pretokenize_line(line, SpaceMode.ISOLATED, model.norm),
                    SpaceMode.ISOLATED_NO_SPACES,
                )
                self.assertEqual(
                    [t for t in kept.tokens if t != "▁"], list(stripped.tokens)
                )
                self.assertEqual(
                    canonicalize(line, NormConfig()).replace(" ", ""),
                    detokenize(stripped, SpaceMode.ISOLATED_NO_SPACES),
                )


if __name__ == "__main__":
    unittest.main()
