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
Static figures of training histories and ROC curves, drawn with matplotlib
on the non-interactive Agg backend.
"""

import logging
from typing import Dict, List, Optional, Tuple

from wyckoff_detector.train.metrics import RocPoint
from wyckoff_detector.train.settings import EpochRecord

LOG = logging.getLogger(__name__)

DPI = 150


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _plot_by_epoch(histories: Dict[str, List[EpochRecord]], metric: str,
                   title: str, path: str) -> None:
    plt = _pyplot()
    fig, axes = plt.subplots(1, len(histories),
                             figsize=(5 * len(histories), 3.6),
                             squeeze=False, constrained_layout=True)
    for ax, (label, history) in zip(axes[0], histories.items()):
        epochs = [r.epoch for r in history]
        ax.plot(epochs, [getattr(r, "train_" + metric) for r in history],
                marker="o", label="train")
        ax.plot(epochs, [getattr(r, "test_" + metric) for r in history],
                marker="s", label="test")
        ax.set_title("{} {}".format(label, title))
        ax.set_xlabel("Epoch")
        ax.set_ylabel(title)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best")
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    LOG.info("Wrote %s figure to %s.", title.lower(), path)


def plot_accuracy(histories: Dict[str, List[EpochRecord]], path: str) -> None:
    """Train and test accuracy by epoch, one panel per history."""
    _plot_by_epoch(histories, "acc", "Accuracy", path)


def plot_loss(histories: Dict[str, List[EpochRecord]], path: str) -> None:
    """Train and test loss by epoch, one panel per history."""
    _plot_by_epoch(histories, "loss", "Loss", path)


def plot_roc(curves: Dict[str, Tuple[List[RocPoint], Optional[float]]],
             path: str) -> None:
    """All ROC curves on one set of axes, with the chance diagonal. Curve
    labels carry the AUC when it is known."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.8, 4.8), constrained_layout=True)
    for label, (points, auc) in curves.items():
        if auc is not None:
            label = "{} (AUC {:.4f})".format(label, auc)
        ax.plot([p.fpr for p in points], [p.tpr for p in points],
                label=label)
    ax.plot([0.0, 1.0], [0.0, 1.0], linestyle="--", color="grey")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel("False positive rate")
    ax.set_ylabel("True positive rate")
    ax.set_title("ROC")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right")
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    LOG.info("Wrote ROC figure of %s curves to %s.", len(curves), path)
