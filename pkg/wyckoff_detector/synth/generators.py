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
Synthetic trading range (TR) and secondary test (ST) pattern generators.

All randomness is drawn from a numpy Generator handed in by the caller, so a
dataset is fully determined by its seed. Uniform draws between two bounds
are order-insensitive: uniform(a, b) with a > b samples [b, a].
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from wyckoff_detector.constants import PRICE_CEILING, Phase
from wyckoff_detector.rules.predicates import tr_valid
from wyckoff_detector.synth.dataset import Dataset, PatternSample

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenSpec:
    """Everything that determines a generated dataset."""
    phase: Phase
    n_valid: int
    n_invalid: int
    seed: int
    gauss_sigma: float = 5.0
    fillers_per_gap: int = 2
    up_fillers: int = 1

    def __post_init__(self):
        if self.n_valid < 0 or self.n_invalid < 0:
            raise ValueError("Sample counts must be non-negative, got "
                             "valid={} invalid={}".format(
                                 self.n_valid, self.n_invalid))
        if not self.gauss_sigma > 0:
            raise ValueError("gauss_sigma must be positive, got {}".format(
                self.gauss_sigma))
        if self.fillers_per_gap < 0 or self.up_fillers < 0:
            raise ValueError("Filler counts must be non-negative.")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer.")

    @property
    def n_features(self) -> int:
        """Pattern width produced by this spec."""
        if self.phase is Phase.TR:
            return Phase.TR.value
        return st_width(self.fillers_per_gap, self.up_fillers)


def st_width(fillers_per_gap: int = 2, up_fillers: int = 1) -> int:
    """Width of an ST pattern: [p1, p2] plus up_filler([p3, p4]), then
    filler over that anchor list."""
    anchors = 2 + (1 + up_fillers)
    return (anchors - 1) * (1 + fillers_per_gap) + 1


def _uniform(rng: np.random.Generator, low: float, high: float) -> float:
    if low > high:
        low, high = high, low
    return float(rng.uniform(low, high))


def filler(anchor_values: Sequence[float], rng: np.random.Generator,
           fillers_per_gap: int = 2) -> List[float]:
    """Insert noise points between consecutive anchors.

    Each gap contributes its left anchor followed by fillers_per_gap values
    drawn uniformly between the two anchors; the last anchor closes the
    sequence.

    Arguments:
        anchor_values {Sequence[float]} -- At least two anchors.
        rng {np.random.Generator} -- Random stream.

    Keyword Arguments:
        fillers_per_gap {int} -- Values inserted per gap. (default: {2})

    Raises:
        ValueError -- Fewer than two anchors.

    Returns:
        List[float] -- (len - 1) * (1 + fillers_per_gap) + 1 values.
    """
    if len(anchor_values) < 2:
        raise ValueError("filler needs at least 2 anchors, got {}".format(
            len(anchor_values)))
    out = []
    for left, right in zip(anchor_values, anchor_values[1:]):
        out.append(float(left))
        for _ in range(fillers_per_gap):
            out.append(_uniform(rng, left, right))
    out.append(float(anchor_values[-1]))
    return out


def up_filler(values: Sequence[float], upper_limit: float,
              rng: np.random.Generator, up_fillers: int = 1) -> List[float]:
    """Follow each value with draws between it and upper_limit.

    The final input value is never emitted: for [p3, p4] the result is
    [p3, u] and p4 is discarded. Generated training corpora depend on this.

    Arguments:
        values {Sequence[float]} -- At least two values.
        upper_limit {float} -- Upper bound of the draws.
        rng {np.random.Generator} -- Random stream.

    Keyword Arguments:
        up_fillers {int} -- Draws per value. (default: {1})

    Raises:
        ValueError -- Fewer than two values.

    Returns:
        List[float] -- (len - 1) * (1 + up_fillers) values.
    """
    if len(values) < 2:
        raise ValueError("up_filler needs at least 2 values, got {}".format(
            len(values)))
    out = []
    for start in values[:-1]:
        out.append(float(start))
        for _ in range(up_fillers):
            out.append(_uniform(rng, start, upper_limit))
    return out


def gen_tr_sample(rng: np.random.Generator, valid: bool) -> PatternSample:
    """Draw one trading range pattern [p1, p2, p3, p4].

    A valid draw is built so that p2 < p4 < p3 < p1. An invalid draw is four
    independent uniforms, relabeled valid when it happens to satisfy the
    TR rule.

    Arguments:
        rng {np.random.Generator} -- Random stream.
        valid {bool} -- Which branch to draw from.

    Returns:
        PatternSample -- The labeled pattern; anchors equal values.
    """
    if valid:
        while True:
            p1 = _uniform(rng, 0, PRICE_CEILING)
            p2 = _uniform(rng, 0, p1)
            p3 = _uniform(rng, p2, p1)
            p4 = _uniform(rng, p2, p3)
            # half-open draws can land on a bound
            if p2 < p4 < p3 < p1:
                break
        values = (p1, p2, p3, p4)
        return PatternSample(1, values, values)

    while True:
        values = tuple(_uniform(rng, 0, PRICE_CEILING) for _ in range(4))
        if len(set(values)) == 4:
            break
    return PatternSample(int(tr_valid(values)), values, values)


def gen_st_sample(rng: np.random.Generator,
                  gauss_sigma: float = 5.0,
                  fillers_per_gap: int = 2,
                  up_fillers: int = 1) -> PatternSample:
    """Draw one valid secondary test pattern.

    p1 ~ U(0, 100), p2 ~ U(0, p1); p3 and p4 are Gaussian around p2 and
    clamped to [0, p1]. The anchor list [p1, p2] + up_filler([p3, p4], p1)
    is then passed through filler, giving
    [p1, f, f, p2, f, f, p3, f, f, u] under default settings.

    Arguments:
        rng {np.random.Generator} -- Random stream.

    Keyword Arguments:
        gauss_sigma {float} -- Spread of the retest lows. (default: {5.0})
        fillers_per_gap {int} -- filler density. (default: {2})
        up_fillers {int} -- up_filler density. (default: {1})

    Returns:
        PatternSample -- Label 1; anchors are (p1, p2, p3, p4).
    """
    p1 = _uniform(rng, 0, PRICE_CEILING)
    p2 = _uniform(rng, 0, p1)
    p3 = min(max(0.0, float(rng.normal(p2, gauss_sigma))), p1)
    p4 = min(max(0.0, float(rng.normal(p2, gauss_sigma))), p1)
    anchors = [p1, p2] + up_filler([p3, p4], p1, rng, up_fillers)
    values = filler(anchors, rng, fillers_per_gap)
    return PatternSample(1, tuple(values), (p1, p2, p3, p4))


def gen_st_negative(rng: np.random.Generator,
                    n_features: int = Phase.ST.value) -> PatternSample:
    """Draw one invalid secondary test pattern: independent uniforms on
    [0, 100], never relabeled.

    Arguments:
        rng {np.random.Generator} -- Random stream.

    Keyword Arguments:
        n_features {int} -- Pattern width. (default: {10})

    Returns:
        PatternSample -- Label 0.
    """
    values = tuple(
        float(v) for v in rng.uniform(0, PRICE_CEILING, size=n_features))
    return PatternSample(0, values, None)


def gen_dataset(spec: GenSpec) -> Dataset:
    """Generate a dataset: all valid-branch samples first, then all
    invalid-branch samples, from one stream seeded by spec.seed.

    Arguments:
        spec {GenSpec} -- What to generate.

    Returns:
        Dataset -- The generated dataset. TR label counts may differ from
        the branch counts because of relabeling.
    """
    rng = np.random.default_rng(spec.seed)
    samples = []
    if spec.phase is Phase.TR:
        samples.extend(gen_tr_sample(rng, True) for _ in range(spec.n_valid))
        samples.extend(
            gen_tr_sample(rng, False) for _ in range(spec.n_invalid))
    else:
        samples.extend(
            gen_st_sample(rng, spec.gauss_sigma, spec.fillers_per_gap,
                          spec.up_fillers) for _ in range(spec.n_valid))
        samples.extend(
            gen_st_negative(rng, spec.n_features)
            for _ in range(spec.n_invalid))
    positives = sum(s.label for s in samples)
    LOG.info("Generated %s %s samples (%s labeled valid) from seed %s.",
             len(samples), spec.phase.name, positives, spec.seed)
    return Dataset(spec.phase, spec.n_features, samples, spec.seed)
