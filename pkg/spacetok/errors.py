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
"""Error types raised by spacetok.

Every user-facing error carries the process exit code the CLI uses for it.
"""


class SpacetokError(Exception):
    """Base class for all spacetok errors."""

    exit_code = 1


class ConfigError(SpacetokError):
    """An option, vocabulary size or run configuration is invalid."""

    exit_code = 3


class FormatError(SpacetokError):
    """A model file, dataset or lexicon could not be parsed or does not match."""

    exit_code = 4


class DecodeError(FormatError):
    """Input bytes were not valid UTF-8 (or the text was not valid Unicode)."""


class NormalizationError(SpacetokError):
    """Raw text already contains the reserved space symbol."""

    exit_code = 5


class CoverageError(SpacetokError):
    """A pretoken cannot be segmented with the pieces of a model."""

    exit_code = 6


# Exit code used by the CLI for OSError.
IO_EXIT_CODE = 7
