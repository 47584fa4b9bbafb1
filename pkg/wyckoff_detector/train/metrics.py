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
Evaluation metrics: loss, accuracy, confusion counts and ROC/AUC.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from wyckoff_detector.constants import NORMALIZATION
from wyckoff_detector.errors import (DataError, FeatureMismatchError,
                                     NumericError)
from wyckoff_detector.nn.functions import bce_loss
from wyckoff_detector.nn.model import LstmModel, predict
from wyckoff_detector.synth.dataset import Dataset
from wyckoff_detector.thread import ordered_map

LOG = logging.getLogger(__name__)

# Samples scored per work item when evaluation fans out.
CHUNK_SIZE = 4096


def format_metric(value: float) -> str:
    """Text form of a metric on stdout and in report files."""
    return "{:.6f}".format(value)


class RocPoint(NamedTuple):
    """One ROC operating point. threshold is the score at or above which a
    sample is called positive; the (0, 0) start uses +inf."""
    threshold: float
    fpr: float
    tpr: float


@dataclass(frozen=True)
class Confusion:
    """Confusion counts at a threshold."""
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class EvalReport:
    """Everything evaluate() measures on one dataset."""
    loss: float
    accuracy: float
    confusion: Confusion
    roc: List[RocPoint]
    auc: float
    threshold: float = 0.5

    def summary(self) -> str:
        """The one-line report printed by the eval command."""
        return ("loss={} acc={} auc={} tp={} fp={} tn={} fn={}".
                format(format_metric(self.loss), format_metric(self.accuracy),
                       format_metric(self.auc), self.confusion.tp,
                       self.confusion.fp, self.confusion.tn,
                       self.confusion.fn))


def roc(scores: Sequence[float],
        labels: Sequence[int]) -> Tuple[List[RocPoint], float]:
    """Sweep every distinct score as a threshold, highest first.

    Tied scores move together as one step. The curve starts at (0, 0) and
    ends at (1, 1); the area under it is taken with the trapezoidal rule.

    Arguments:
        scores {Sequence[float]} -- Predicted probabilities.
        labels {Sequence[int]} -- True labels in {0, 1}.

    Raises:
        DataError -- Lengths differ, or only one class is present.

    Returns:
        Tuple[List[RocPoint], float] -- The curve and its AUC.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.shape != labels.shape:
        raise DataError("roc got {} scores and {} labels".format(
            scores.size, labels.size))
    positives = int(labels.sum())
    negatives = int(labels.size - positives)
    if positives == 0 or negatives == 0:
        raise DataError("roc needs both classes; got {} positive and {} "
                        "negative samples".format(positives, negatives))

    order = np.argsort(-scores, kind="mergesort")
    ranked = scores[order]
    hits = labels[order]
    # last position of each run of equal scores
    ends = np.r_[np.flatnonzero(np.diff(ranked)), ranked.size - 1]
    tps = np.cumsum(hits)[ends]
    fps = (ends + 1) - tps

    points = [RocPoint(float("inf"), 0.0, 0.0)]
    points.extend(
        RocPoint(float(ranked[end]), fp / negatives, tp / positives)
        for end, tp, fp in zip(ends, tps, fps))
    if points[-1].fpr != 1.0 or points[-1].tpr != 1.0:
        points.append(RocPoint(float(ranked[-1]), 1.0, 1.0))

    fpr = np.array([p.fpr for p in points])
    tpr = np.array([p.tpr for p in points])
    auc = float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2.0))
    return points, auc


def confusion(scores: np.ndarray, labels: np.ndarray,
              threshold: float = 0.5) -> Confusion:
    """Confusion counts; a score equal to the threshold counts as positive.
    """
    predicted = np.asarray(scores) >= threshold
    actual = np.asarray(labels) == 1
    return Confusion(tp=int(np.sum(predicted & actual)),
                     fp=int(np.sum(predicted & ~actual)),
                     tn=int(np.sum(~predicted & ~actual)),
                     fn=int(np.sum(~predicted & actual)))


def accuracy_of(counts: Confusion) -> float:
    """Fraction correct, computed as 1 - (FP + FN) / N."""
    return 1.0 - (counts.fp + counts.fn) / counts.total


def normalized_values(d: Dataset) -> np.ndarray:
    """Dataset values divided by 100, checked to lie in [0, 1]."""
    values = d.values() / NORMALIZATION
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise DataError("Normalized features fall outside [0, 1].")
    return values


def score(m: LstmModel, patterns: np.ndarray, workers: int = 1) -> np.ndarray:
    """Probabilities for normalized patterns, fanned out over disjoint
    chunks and reassembled in order.

    Raises:
        NumericError -- A probability is not finite.
    """
    chunks = [
        patterns[start:start + CHUNK_SIZE]
        for start in range(0, patterns.shape[0], CHUNK_SIZE)
    ]
    parts = ordered_map(lambda chunk: predict(m, chunk), chunks, workers)
    probabilities = np.concatenate(parts) if parts else np.zeros(0)
    if not np.all(np.isfinite(probabilities)):
        raise NumericError("Model produced non-finite probabilities.")
    return probabilities


def loss_and_accuracy(m: LstmModel, patterns: np.ndarray, labels: np.ndarray,
                      workers: int = 1,
                      threshold: float = 0.5) -> Tuple[float, float]:
    """Mean loss and accuracy without the ROC sweep."""
    probabilities = score(m, patterns, workers)
    loss = float(np.mean(bce_loss(probabilities, labels)))
    return loss, accuracy_of(confusion(probabilities, labels, threshold))


def evaluate(m: LstmModel, d: Dataset, threshold: float = 0.5,
             workers: int = 1) -> EvalReport:
    """Score every sample of d once and measure the model.

    Arguments:
        m {LstmModel} -- The model.
        d {Dataset} -- Data with the model's pattern width.

    Keyword Arguments:
        threshold {float} -- Decision threshold. (default: {0.5})
        workers {int} -- Scoring threads. (default: {1})

    Raises:
        FeatureMismatchError -- Pattern widths differ.
        DataError -- Empty dataset, or a single class (no ROC).

    Returns:
        EvalReport -- The measurements.
    """
    if d.n_features != m.pattern_width:
        raise FeatureMismatchError(m.pattern_width, d.n_features)
    if not len(d):
        raise DataError("Cannot evaluate on an empty dataset.")
    labels = d.labels()
    probabilities = score(m, normalized_values(d), workers)
    loss = float(np.mean(bce_loss(probabilities, labels)))
    counts = confusion(probabilities, labels, threshold)
    accuracy = accuracy_of(counts)
    points, auc = roc(probabilities, labels)
    LOG.info("Evaluated %s samples: loss=%.6f acc=%.6f auc=%.6f", len(d),
             loss, accuracy, auc)
    return EvalReport(loss, accuracy, counts, points, auc, threshold)
