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
"""Tests for spacetok.datasets."""
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

from spacetok.datasets import (
    DatasetFormat,
    MorphRecord,
    MorphType,
    parse_morpholex_segmentation,
    parse_records,
    read_dataset,
    write_normalized,
)
from spacetok.errors import FormatError, NormalizationError


class DatasetFormatTest(unittest.TestCase):
    def test_parse(self) -> None:
        self.assertIs(DatasetFormat.LADEC, DatasetFormat.parse("LADEC"))
        with self.assertRaises(FormatError):
            DatasetFormat.parse("celex")


class LadecTest(unittest.TestCase):
    def test_headerless_row(self) -> None:
        records, stats = parse_records(["doghouse, dog, house\n"], "ladec")
        expected = MorphRecord(
            "doghouse",
            ("dog", "house"),
            DatasetFormat.LADEC,
            (MorphType.ROOT, MorphType.ROOT),
        )
        self.assertEqual([expected], records)
        self.assertEqual(1, stats.kept)

    def test_header_selects_columns(self) -> None:
        lines = ["id,c1,c2,stim\n", "1,dog,house,doghouse\n", "2,rain,bow,rainbow\n"]
        records, stats = parse_records(lines, DatasetFormat.LADEC)
        self.assertEqual(["doghouse", "rainbow"], [r.word for r in records])
        self.assertEqual(2, stats.rows)

    def test_non_concatenative_dropped(self) -> None:
        records, stats = parse_records(["bluebird,blue,berry\n"], "ladec")
        self.assertEqual([], records)
        self.assertEqual(1, stats.non_concatenative)
        self.assertEqual(1, stats.dropped)

    def test_malformed_row(self) -> None:
        lines = ["doghouse,dog\n", "rainbow,rain,bow\n"]
        records, stats = parse_records(lines, "ladec")
        self.assertEqual(1, len(records))
        self.assertEqual(1, stats.malformed)
        self.assertEqual([1], stats.malformed_lines)


class MorphoLexTest(unittest.TestCase):
    def test_segmentation(self) -> None:
        morphemes, types = parse_morpholex_segmentation("{<un<(beat)>able>}")
        self.assertEqual(("un", "beat", "able"), morphemes)
        self.assertEqual((MorphType.PREFIX, MorphType.ROOT, MorphType.SUFFIX), types)

    def test_tab_separated_with_header(self) -> None:
        lines = [
            "Word\tPOS\tMorphoLexSegm\n",
            "unbeatable\tJ\t{<un<(beat)>able>}\n",
            "kindness\tN\t{(kind)>ness>}\n",
        ]
        records, _ = parse_records(lines, "morpholex")
        self.assertEqual(["un"], records[0].prefixes)
        self.assertEqual(["able"], records[0].suffixes)
        self.assertEqual(("kind", "ness"), records[1].gold_morphemes)

    def test_comma_separated(self) -> None:
        lines = ["Word,MorphoLexSegm\n", "kindness,{(kind)>ness>}\n"]
        records, _ = parse_records(lines, "morpholex")
        self.assertEqual(("kind", "ness"), records[0].gold_morphemes)

    def test_bad_segmentation_is_malformed(self) -> None:
        _, stats = parse_records(["kindness\tkind+ness\n"], "morpholex")
        self.assertEqual(1, stats.malformed)


class MorphyNetTest(unittest.TestCase):
    def test_prefix_and_suffix(self) -> None:
        lines = [
            "do\tundo\tV\tV\tun\tprefix\n",
            "kind\tkindness\tJ\tN\tness\tsuffix\n",
            "run\trunner\tV\tN\tner\tother\n",
        ]
        records, stats = parse_records(lines, "morphynet")
        self.assertEqual(("un", "do"), records[0].gold_morphemes)
        self.assertEqual(["ness"], records[1].suffixes)
        self.assertEqual(1, stats.malformed)


class DagobertTest(unittest.TestCase):
    def test_affix_lists(self) -> None:
        records, _ = parse_records(["unkindness\tun\tkind\tness\n"], "dagobert")
        self.assertEqual(("un", "kind", "ness"), records[0].gold_morphemes)
        records, _ = parse_records(["kindly\t\tkind\tly\n"], "dagobert")
        self.assertEqual(("kind", "ly"), records[0].gold_morphemes)
        self.assertEqual([], records[0].prefixes)


class FilterTest(unittest.TestCase):
    def test_comments_and_blank_lines(self) -> None:
        lines = ["# header\n", "\n", "unbeatable\tun beat able\n"]
        records, stats = parse_records(lines, "custom")
        self.assertEqual(1, len(records))
        self.assertEqual(1, stats.rows)

    def test_multi_parse_dropped(self) -> None:
        lines = ["ab\ta b\n", "ab\tab\n", "cd\tc d\n"]
        records, stats = parse_records(lines, "custom")
        self.assertEqual(["cd"], [r.word for r in records])
        self.assertEqual(2, stats.multi_parse)

    def test_duplicates(self) -> None:
        lines = ["cd\tc d\n", "cd\tc d\n"]
        records, stats = parse_records(lines, "custom")
        self.assertEqual(1, len(records))
        self.assertEqual(1, stats.duplicates)
        records, _ = parse_records(lines, "custom", dedupe=False)
        self.assertEqual(2, len(records))

    def test_whitespace(self) -> None:
        _, stats = parse_records(["ice cream\tice cream\n"], "custom")
        self.assertEqual(1, stats.whitespace)

    def test_space_symbol_rejected(self) -> None:
        lines = ["doghouse\tdog house\n", "a▁b\ta▁ b\n"]
        with self.assertRaisesRegex(NormalizationError, "Line 2"):
            parse_records(lines, "custom")

    def test_custom_space_symbol(self) -> None:
        records, _ = parse_records(["a▁b\ta▁ b\n"], "custom", space_symbol="_")
        self.assertEqual(("a▁", "b"), records[0].gold_morphemes)
        with self.assertRaises(NormalizationError):
            parse_records(["a_b\ta_ b\n"], "custom", space_symbol="_")

    def test_lowercase(self) -> None:
        records, _ = parse_records(["Doghouse\tDog house\n"], "custom", lowercase=True)
        self.assertEqual(("dog", "house"), records[0].gold_morphemes)


class FileTest(unittest.TestCase):
    def test_write_then_read(self) -> None:
        records = [
            MorphRecord("unbeatable", ("un", "beat", "able")),
            MorphRecord("doghouse", ("dog", "house")),
        ]
        with TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "gold.tsv"
            self.assertEqual(2, write_normalized(records, path))
            self.assertEqual(
                "unbeatable\tun beat able\ndoghouse\tdog house\n",
                path.read_text(encoding="utf-8"),
            )
            read, stats = read_dataset(path, "custom")
            self.assertEqual(records, read)
            self.assertEqual(0, stats.dropped)

    def test_space_symbol_names_file(self) -> None:
        with TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "gold.tsv"
            path.write_text("a▁b\ta▁ b\n", encoding="utf-8")
            with self.assertRaisesRegex(NormalizationError, "gold.tsv: Line 1"):
                read_dataset(path, "custom")

    def test_invalid_utf8(self) -> None:
        with TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "gold.tsv"
            path.write_bytes(b"\xff\tx\n")
            with self.assertRaises(FormatError):
                read_dataset(path, "custom")


if __name__ == "__main__":
    unittest.main()
