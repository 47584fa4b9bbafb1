# Copyright 2024 The wyckoff_detector Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Custom threading code.
"""

from concurrent.futures import ThreadPoolExecutor
from queue import Queue
from typing import Callable, Iterable, List, TypeVar

from wyckoff_detector.config import get_config

T = TypeVar("T")
R = TypeVar("R")


class BoundedThreadPoolExecutor(ThreadPoolExecutor):
    """A wrapper around concurrent.futures.thread.py to add a bounded
    queue to ThreadPoolExecutor.
    """

    def __init__(self, *args, queue_size: int = 64, **kwargs):
        """Construct a slightly modified ThreadPoolExecutor with a
        bounded queue for work. Causes submit() to block when full.
        """
        super().__init__(*args, **kwargs)
        self._work_queue = Queue(queue_size)


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int,
                queue_size: int = None) -> List[R]:
    """Apply func to every item on a bounded pool and return the results in
    submission order. With a single worker the items are processed inline.

    Arguments:
        func {Callable} -- Pure function to apply.
        items {Iterable} -- Work items, typically disjoint chunks.
        workers {int} -- Thread count.

    Keyword Arguments:
        queue_size {int} -- Work queue bound; RUNTIME.WORK_QUEUE_SIZE or 64.
        (default: {None})

    Returns:
        List -- func(item) for each item, in the order items were given.
    """
    if workers <= 1:
        return [func(item) for item in items]
    if queue_size is None:
        queue_size = get_config().getint("RUNTIME", "WORK_QUEUE_SIZE",
                                         fallback=64)
    with BoundedThreadPoolExecutor(max_workers=workers,
                                   queue_size=queue_size) as executor:
        futures = [executor.submit(func, item) for item in items]
        return [future.result() for future in futures]
