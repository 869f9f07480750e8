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
"""Release and format constants."""
import enum

major = 1
minor = 0
patch = 0
release = "{}.{}.{}".format(major, minor, patch)

# Bumped whenever the model file layout changes incompatibly.
MODEL_FORMAT_VERSION = 1
MODEL_MAGIC = "#spacetok-model"

DEFAULT_VOCAB_SIZE = 16000


@enum.unique
class Algorithm(enum.Enum):
    BPE = "bpe"
    UNIGRAM = "unigram"
    WORDPIECE = "wordpiece"


if __name__ == "__main__":
    print(release)
