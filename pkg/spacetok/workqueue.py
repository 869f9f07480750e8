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
"""Fans corpus shards out to worker processes.

Counting, EM and evaluation all cut their input into NUM_SHARDS shards, map a
module level function over them and reduce the partial results. Results are
always handed back in shard order, so floating point sums come out
bit-identical no matter how many workers ran the tasks.
"""
from __future__ import annotations

import logging
import multiprocessing
import multiprocessing.queues
import os
import signal
import sys
import traceback
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from types import FrameType, TracebackType
from typing import Any, Generic, Optional, Type, TypeVar, Union

from spacetok.errors import SpacetokError

# Work is cut into this many shards regardless of the worker count.
NUM_SHARDS = 16

ItemT = TypeVar("ItemT")
ResultT = TypeVar("ResultT")


def logger() -> logging.Logger:
    """Returns the module level logger."""
    return logging.getLogger(__name__)


class TaskError(Exception):
    """An exception raised while processing a shard.

    The message is the formatted traceback from wherever the shard ran, which
    for a process pool is the worker rather than the caller. A SpacetokError
    is kept as error so the caller can re-raise it with its own exit code.
    """

    def __init__(self, trace: str, error: Optional[SpacetokError] = None) -> None:
        super().__init__(trace, error)
        self.trace = trace
        self.error = error

    def __str__(self) -> str:
        return self.trace


@dataclass(frozen=True)
class ShardTask(Generic[ItemT, ResultT]):
    """One shard and the function to apply to it."""

    index: int
    func: Callable[[ItemT], ResultT]
    item: ItemT

    def run(self) -> tuple[int, Union[ResultT, TaskError]]:
        try:
            return self.index, self.func(self.item)
        except SpacetokError as ex:
            return self.index, TaskError(traceback.format_exc(), ex)
        except Exception:  # pylint: disable=broad-except
            return self.index, TaskError(traceback.format_exc())


TaskQueue = multiprocessing.queues.Queue


def worker_sigterm_handler(_signum: int, _frame: Optional[FrameType]) -> None:
    """Raises SystemExit so finally blocks run in the worker."""
    sys.exit()


def _worker_main(
    tasks: TaskQueue[Optional[ShardTask[Any, Any]]],
    results: TaskQueue[tuple[int, Any]],
) -> None:
    """Runs shards until the None sentinel arrives."""
    signal.signal(signal.SIGTERM, worker_sigterm_handler)
    try:
        while (task := tasks.get()) is not None:
            logger().debug("worker %d running shard %d", os.getpid(), task.index)
            results.put(task.run())
    except SystemExit:
        pass
    logger().debug("worker %d exiting", os.getpid())


class BaseWorkQueue(ABC):
    """Maps a function over shards and returns the results in shard order."""

    @abstractmethod
    def _run(
        self, tasks: Sequence[ShardTask[ItemT, ResultT]]
    ) -> Iterable[tuple[int, Union[ResultT, TaskError]]]:
        """Runs every task, yielding (index, result) pairs in any order."""

    def close(self, abort: bool = False) -> None:
        """Releases the queue's workers. abort skips any queued shards."""

    def map_ordered(
        self, func: Callable[[ItemT], ResultT], items: Sequence[ItemT]
    ) -> list[ResultT]:
        """Applies func to every item and returns results in item order.

        func must be a module level function so it can be pickled. The first
        failed item raises its SpacetokError if it had one, or else TaskError.
        """
        tasks = [ShardTask(index, func, item) for index, item in enumerate(items)]
        results: dict[int, ResultT] = {}
        for index, result in self._run(tasks):
            if isinstance(result, TaskError):
                if result.error is not None:
                    logger().debug("shard %d failed:\n%s", index, result.trace)
                    raise result.error
                raise result
            results[index] = result
        return [results[i] for i in range(len(tasks))]

    def __enter__(self) -> BaseWorkQueue:
        return self

    def __exit__(
        self,
        exc_type: Optional[Type[BaseException]],
        _exc_value: Optional[BaseException],
        _traceback: Optional[TracebackType],
    ) -> None:
        self.close(abort=exc_type is not None)


class ProcessPoolWorkQueue(BaseWorkQueue):
    """Runs shards on a pool of worker processes.

    Workers start immediately and live until close(), which the context
    manager calls on exit.
    """

    join_timeout = 8  # Seconds to wait for a worker before SIGKILL.

    def __init__(self, num_workers: int = multiprocessing.cpu_count()) -> None:
        self.tasks: TaskQueue[Optional[ShardTask[Any, Any]]] = multiprocessing.Queue()
        self.results: TaskQueue[tuple[int, Any]] = multiprocessing.Queue()
        self.workers = [
            multiprocessing.Process(
                target=_worker_main, args=(self.tasks, self.results)
            )
            for _ in range(num_workers)
        ]
        for worker in self.workers:
            worker.start()
        logger().debug("started %d workers", num_workers)

    def _run(
        self, tasks: Sequence[ShardTask[ItemT, ResultT]]
    ) -> list[tuple[int, Union[ResultT, TaskError]]]:
        for task in tasks:
            self.tasks.put(task)
        # Drain every result so a failed map leaves nothing queued.
        return [self.results.get() for _ in tasks]

    def close(self, abort: bool = False) -> None:
        for worker in self.workers:
            if abort:
                worker.terminate()
            else:
                self.tasks.put(None)
        for worker in self.workers:
            worker.join(self.join_timeout)
            if worker.is_alive():
                logger().error("worker %s will not exit; sending SIGKILL", worker.pid)
                worker.kill()
                worker.join()
        self.workers = []


class BasicWorkQueue(BaseWorkQueue):
    """Runs every shard on the calling thread, in order.

    Single-threaded runs use this, and it is handy when debugging.
    """

    def _run(
        self, tasks: Sequence[ShardTask[ItemT, ResultT]]
    ) -> Iterator[tuple[int, Union[ResultT, TaskError]]]:
        return (task.run() for task in tasks)


def make_workqueue(num_workers: int) -> BaseWorkQueue:
    """Returns a process pool, or an in-process queue for num_workers <= 1."""
    if num_workers <= 1:
        return BasicWorkQueue()
    return ProcessPoolWorkQueue(num_workers)


def shard(items: Sequence[ItemT], num_shards: int = NUM_SHARDS) -> list[list[ItemT]]:
    """Splits items into at most num_shards contiguous, non-empty lists.

    The split depends only on len(items) and num_shards.

    >>> shard([1, 2, 3, 4, 5], 2)
    [[1, 2, 3], [4, 5]]
    """
    if not items:
        return []
    size = -(-len(items) // num_shards)
    return [list(items[i : i + size]) for i in range(0, len(items), size)]
