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
Report files: training history and ROC curves.
"""

import logging
from dataclasses import asdict
from typing import List, Optional, Tuple

import pandas as pd

from wyckoff_detector.constants import FLOAT_FORMAT
from wyckoff_detector.errors import DataError
from wyckoff_detector.train.metrics import EvalReport, RocPoint, format_metric
from wyckoff_detector.train.settings import EpochRecord

LOG = logging.getLogger(__name__)

HISTORY_COLUMNS = ["epoch", "train_loss", "train_acc", "test_loss", "test_acc"]
ROC_COLUMNS = ["threshold", "fpr", "tpr"]


def write_history(history: List[EpochRecord], path: str) -> None:
    """Write per-epoch metrics as CSV
    `epoch,train_loss,train_acc,test_loss,test_acc`."""
    frame = pd.DataFrame([asdict(r) for r in history],
                         columns=HISTORY_COLUMNS)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT,
                 lineterminator="\n")
    LOG.info("Wrote %s epochs of history to %s.", len(history), path)


def write_roc(report: EvalReport, path: str) -> None:
    """Write the ROC curve as CSV `threshold,fpr,tpr`, followed by a
    `# auc=<value>` line."""
    frame = pd.DataFrame([p._asdict() for p in report.roc],
                         columns=ROC_COLUMNS)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT,
                     lineterminator="\n")
        handle.write("# auc={}\n".format(format_metric(report.auc)))
    LOG.info("Wrote %s ROC points to %s.", len(report.roc), path)


def _read_report(path: str, columns: List[str], what: str) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, comment="#")
    except OSError as error:
        raise DataError("Cannot read {} {}: {}".format(
            what, path, error.strerror)) from error
    except (pd.errors.EmptyDataError, pd.errors.ParserError):
        raise DataError("{} {} is not a CSV file".format(what, path)) from None
    except UnicodeDecodeError:
        raise DataError("{} {} is not valid UTF-8 text".format(what,
                                                              path)) from None
    if list(frame.columns) != columns:
        raise DataError("{} {} must have columns {}, got {}".format(
            what, path, ",".join(columns), ",".join(map(str, frame.columns))))
    try:
        return frame.astype(float)
    except ValueError:
        raise DataError("{} {} has non-numeric values".format(what,
                                                              path)) from None


def read_history(path: str) -> List[EpochRecord]:
    """Read a history CSV written by write_history.

    Raises:
        DataError -- Missing file, wrong columns, or non-numeric values.
    """
    frame = _read_report(path, HISTORY_COLUMNS, "History file")
    return [
        EpochRecord(int(row.epoch), row.train_loss, row.train_acc,
                    row.test_loss, row.test_acc)
        for row in frame.itertuples(index=False)
    ]


def read_roc(path: str) -> Tuple[List[RocPoint], Optional[float]]:
    """Read an ROC CSV written by write_roc.

    Returns:
        Tuple[List[RocPoint], Optional[float]] -- The curve, and the AUC
        from the trailing comment line when present.
    """
    frame = _read_report(path, ROC_COLUMNS, "ROC file")
    auc = None
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if line.startswith("# auc="):
                auc = float(line.split("=", 1)[1])
    points = [
        RocPoint(row.threshold, row.fpr, row.tpr)
        for row in frame.itertuples(index=False)
    ]
    return points, auc
