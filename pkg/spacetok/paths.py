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
"""Default locations for corpora and datasets."""
import os
from pathlib import Path

DATA_DIR_ENV = "SPACETOK_DATA_DIR"
DEFAULT_DATA_DIR = Path.home() / ".cache" / "spacetok"


def _get_dir_from_env(default: Path, env_var: str, create: bool = True) -> Path:
    """Returns the path to a directory specified by the environment.

    If the environment variable is not set, the default will be used. The
    directory is created if it does not exist and create is set.

    Args:
        default: The path used if the environment variable is not set.
        env_var: The environment variable that contains the path, if any.
        create: Whether a missing directory should be created.

    Returns:
        The absolute path to the directory.
    """
    path = Path(os.getenv(env_var, default)).expanduser()
    if create and not path.is_dir():
        path.mkdir(parents=True)
    return path.resolve()


def get_data_dir(create: bool = True) -> Path:
    """Returns the data directory, $SPACETOK_DATA_DIR or ~/.cache/spacetok."""
    return _get_dir_from_env(DEFAULT_DATA_DIR, DATA_DIR_ENV, create)


def resolve_input(path: Path) -> Path:
    """Finds an input file in the working directory or else the data directory.

    Paths that exist nowhere are returned unchanged so that opening them
    reports the name the user gave.
    """
    if path.exists() or path.is_absolute():
        return path
    candidate = get_data_dir(create=False) / path
    return candidate if candidate.exists() else path
