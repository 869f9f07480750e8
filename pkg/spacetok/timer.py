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
"""Wall-clock timing of training runs."""
from __future__ import annotations

import logging
import time
from types import TracebackType
from typing import Optional, Type


def logger() -> logging.Logger:
    """Returns the module level logger."""
    return logging.getLogger(__name__)


class Timer:
    """Measures how long a with block takes.

    >>> with Timer("example") as timer:
    ...     pass
    >>> timer.seconds is not None and timer.seconds >= 0
    True
    """

    def __init__(self, label: str = "run") -> None:
        self.label = label
        self._start: Optional[float] = None
        self.seconds: Optional[float] = None

    def __enter__(self) -> Timer:
        self.seconds = None
        self._start = time.perf_counter()
        return self

    def __exit__(
        self,
        exc_type: Optional[Type[BaseException]],
        _exc_value: Optional[BaseException],
        _traceback: Optional[TracebackType],
    ) -> None:
        assert self._start is not None
        self.seconds = time.perf_counter() - self._start
        if exc_type is None:
            logger().info("%s took %.2fs", self.label, self.seconds)
