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
Swing point extraction from a raw price series.

A swing high is a strict maximum over a symmetric window of k bars on each
side; a swing low is a strict minimum. Plateaus produce no swing. Runs of
same-kind swings are collapsed to their most extreme member so the result
alternates between highs and lows.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


class SwingKind(Enum):
    """Direction of a swing point."""
    HIGH = "H"
    LOW = "L"


@dataclass(frozen=True)
class SwingPoint:
    """A local extremum of the source series."""
    index: int
    price: float
    kind: SwingKind


@dataclass(frozen=True)
class SwingSeries:
    """Alternating swing points in index order."""
    points: Tuple[SwingPoint, ...]
    source_len: int

    def __len__(self) -> int:
        return len(self.points)

    def prices(self) -> List[float]:
        """Swing prices in order."""
        return [p.price for p in self.points]


@dataclass(frozen=True)
class SwingWindow:
    """A run of consecutive swing prices, keyed by the source index of the
    last swing in the run."""
    end_index: int
    values: Tuple[float, ...]


def _more_extreme(candidate: SwingPoint, kept: SwingPoint) -> bool:
    if candidate.kind is SwingKind.HIGH:
        return candidate.price > kept.price
    return candidate.price < kept.price


def extract_swings(prices: Sequence[float], k: int = 5) -> SwingSeries:
    """Find alternating swing highs and lows.

    Arguments:
        prices {Sequence[float]} -- The price series, e.g. closes.

    Keyword Arguments:
        k {int} -- Bars on each side of a candidate. (default: {5})

    Raises:
        ValueError -- k < 1, or fewer than 2k + 1 prices.

    Returns:
        SwingSeries -- Swings in index order.
    """
    if k < 1:
        raise ValueError("Lookback k must be at least 1, got {}".format(k))
    series = np.asarray(prices, dtype=np.float64)
    if series.ndim != 1 or series.size < 2 * k + 1:
        raise ValueError(
            "Series of length {} is too short for lookback {} (need {})".
            format(series.size, k, 2 * k + 1))

    windows = sliding_window_view(series, 2 * k + 1)
    centers = windows[:, k]
    neighbors = np.delete(windows, k, axis=1)
    is_high = centers > neighbors.max(axis=1)
    is_low = centers < neighbors.min(axis=1)

    kept: List[SwingPoint] = []
    for offset in np.flatnonzero(is_high | is_low):
        kind = SwingKind.HIGH if is_high[offset] else SwingKind.LOW
        point = SwingPoint(int(offset) + k, float(centers[offset]), kind)
        if kept and kept[-1].kind is kind:
            if _more_extreme(point, kept[-1]):
                kept[-1] = point
            continue
        kept.append(point)
    return SwingSeries(tuple(kept), int(series.size))


def windows_of_lows_highs(s: SwingSeries, width: int) -> List[SwingWindow]:
    """Every run of width consecutive swing prices, sliding by one swing.

    Arguments:
        s {SwingSeries} -- Extracted swings.
        width {int} -- Swings per window.

    Raises:
        ValueError -- width < 1.

    Returns:
        List[SwingWindow] -- Empty when there are fewer swings than width.
    """
    if width < 1:
        raise ValueError("Window width must be at least 1, got {}".format(
            width))
    points = s.points
    return [
        SwingWindow(points[start + width - 1].index,
                    tuple(p.price for p in points[start:start + width]))
        for start in range(len(points) - width + 1)
    ]
