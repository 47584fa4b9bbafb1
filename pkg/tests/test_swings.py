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

import numpy as np
import pytest

from wyckoff_detector.rules.swings import (SwingKind, SwingPoint, SwingSeries,
                                           extract_swings,
                                           windows_of_lows_highs)


def kinds(series):
    return [p.kind for p in series.points]


def test_single_peak():
    s = extract_swings([1, 2, 3, 2, 1], k=2)
    assert s.points == (SwingPoint(2, 3.0, SwingKind.HIGH),)
    assert s.source_len == 5


def test_single_trough():
    s = extract_swings([3, 2, 1, 2, 3], k=2)
    assert s.points == (SwingPoint(2, 1.0, SwingKind.LOW),)


def test_zigzag_with_lookback_one():
    s = extract_swings([1, 3, 2, 4, 1, 5, 0], k=1)
    assert [p.index for p in s.points] == [1, 2, 3, 4, 5]
    assert s.prices() == [3.0, 2.0, 4.0, 1.0, 5.0]
    assert kinds(s) == [SwingKind.HIGH, SwingKind.LOW, SwingKind.HIGH,
                        SwingKind.LOW, SwingKind.HIGH]


def test_monotone_series_has_no_swings():
    assert len(extract_swings(np.arange(50.0), k=5)) == 0
    assert len(extract_swings(np.arange(50.0)[::-1], k=5)) == 0


def test_plateau_is_not_a_swing():
    assert len(extract_swings([1, 2, 2, 1], k=1)) == 0


def test_consecutive_highs_keep_the_higher():
    s = extract_swings([0, 1, 5, 4, 4.5, 6, 2, 1, 0], k=2)
    assert s.points == (SwingPoint(5, 6.0, SwingKind.HIGH),)


def test_swings_alternate_on_noise():
    rng = np.random.default_rng(17)
    prices = np.cumsum(rng.normal(size=2000)) + 500
    for k in (1, 3, 5):
        s = extract_swings(prices, k=k)
        assert len(s) > 2
        for left, right in zip(s.points, s.points[1:]):
            assert left.kind is not right.kind
            assert left.index < right.index


def test_highs_exceed_adjacent_lows_on_zigzag():
    prices = np.tile([10.0, 20.0, 30.0, 40.0, 30.0, 20.0], 20)
    s = extract_swings(prices, k=2)
    assert len(s) > 4
    for left, right in zip(s.points, s.points[1:]):
        high, low = (left, right) if left.kind is SwingKind.HIGH else (
            right, left)
        assert high.price > low.price


def test_swing_price_matches_source():
    prices = np.cumsum(np.random.default_rng(3).normal(size=300))
    for point in extract_swings(prices, k=4).points:
        assert point.price == prices[point.index]
        window = np.delete(prices[point.index - 4:point.index + 5], 4)
        if point.kind is SwingKind.HIGH:
            assert point.price > window.max()
        else:
            assert point.price < window.min()


def test_short_series_is_rejected():
    with pytest.raises(ValueError):
        extract_swings([1.0, 2.0, 1.0], k=2)


def test_lookback_must_be_positive():
    with pytest.raises(ValueError):
        extract_swings([1.0, 2.0, 1.0], k=0)


def make_series(prices):
    points = tuple(
        SwingPoint(i * 3, p, SwingKind.HIGH if i % 2 == 0 else SwingKind.LOW)
        for i, p in enumerate(prices))
    return SwingSeries(points, len(prices) * 3)


def test_window_count():
    windows = windows_of_lows_highs(make_series([9, 1, 8, 2, 7]), 4)
    assert len(windows) == 2
    assert windows[0].values == (9, 1, 8, 2)
    assert windows[1].values == (1, 8, 2, 7)
    assert windows[0].end_index == 9
    assert windows[1].end_index == 12


def test_too_few_swings_gives_no_windows():
    assert windows_of_lows_highs(make_series([9, 1, 8]), 4) == []


def test_window_width_must_be_positive():
    with pytest.raises(ValueError):
        windows_of_lows_highs(make_series([9, 1]), 0)
