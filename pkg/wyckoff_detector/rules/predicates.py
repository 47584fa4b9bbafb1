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
Deterministic Wyckoff structure predicates.
"""

import math
from typing import Sequence


def tr_valid(p: Sequence[float]) -> bool:
    """Whether four swing values form a trading range.

    The five conditions below are, for distinct values, the total order
    p2 < p4 < p3 < p1: a high, a lower low, a lower high, and a higher low
    inside the range.

    Arguments:
        p {Sequence[float]} -- Exactly four finite values p1..p4.

    Raises:
        ValueError -- Wrong length or a non-finite value.

    Returns:
        bool -- True if the pattern is a valid trading range.
    """
    if len(p) != 4:
        raise ValueError("tr_valid takes exactly 4 values, got {}".format(
            len(p)))
    if not all(math.isfinite(v) for v in p):
        raise ValueError("tr_valid got a non-finite value: {}".format(
            list(p)))
    p1, p2, p3, p4 = p
    return p1 > p2 and p2 < p3 and p4 < p3 and p3 < p1 and p4 > p2


def tr_order(p: Sequence[float]) -> bool:
    """The chained form of tr_valid: p2 < p4 < p3 < p1."""
    p1, p2, p3, p4 = p
    return p2 < p4 < p3 < p1
