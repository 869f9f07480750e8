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
"""Random text generators for property tests."""
from __future__ import annotations

import random

# Letters from several scripts, digits, punctuation, an emoji and a
# combining mark. The space symbol is deliberately absent.
FUZZ_CHARS = (
    "abcdefghijklmnopqrstuvwxyz"
    "ABCXYZ0123456789"
    ".,;!?'\"-()"
    "éàüßøñçÅ"
    "αβγδ"
    "абвг"
    "日本語中文"
    "😀"
    "́"
)
FUZZ_SPACES = "  \t　"


def random_line(rng: random.Random, max_length: int = 30) -> str:
    """A line of random characters with roughly one space in five."""
    chars = []
    for _ in range(rng.randint(0, max_length)):
        if rng.random() < 0.2:
            chars.append(rng.choice(FUZZ_SPACES))
        else:
            chars.append(rng.choice(FUZZ_CHARS))
    return "".join(chars)


def random_lines(seed: int, count: int, max_length: int = 30) -> list[str]:
    rng = random.Random(seed)
    return [random_line(rng, max_length) for _ in range(count)]


def random_small_corpus(
    rng: random.Random, alphabet: str = "abc", size: int = 200
) -> list[str]:
    """Lines over a tiny alphabet, at most size characters in total."""
    lines: list[str] = []
    remaining = rng.randint(1, size)
    while remaining > 0:
        words = [
            "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 5)))
            for _ in range(rng.randint(1, 4))
        ]
        line = " ".join(words)[:remaining]
        remaining -= len(line) + 1
        lines.append(line)
    return lines
