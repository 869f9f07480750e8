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
"""Tests for spacetok.vocab."""
import unittest

from spacetok.vocab import SPECIAL_TOKENS, UNK_ID, build_id_map, without_specials


class IdMapTest(unittest.TestCase):
    def test_specials_come_first(self) -> None:
        id_map = build_id_map(["b", "a"])
        self.assertEqual(
            ["[UNK]", "[PAD]", "[CLS]", "[SEP]", "[MASK]", "b", "a"], list(id_map)
        )
        self.assertEqual(UNK_ID, id_map["[UNK]"])
        self.assertEqual(len(SPECIAL_TOKENS), id_map["b"])

    def test_duplicates_keep_first_id(self) -> None:
        id_map = build_id_map(["a", "b", "a"])
        self.assertEqual(7, len(id_map))
        self.assertEqual(5, id_map["a"])

    def test_without_specials(self) -> None:
        self.assertEqual({"a"}, without_specials(["[CLS]", "a", "[MASK]"]))


if __name__ == "__main__":
    unittest.main()
