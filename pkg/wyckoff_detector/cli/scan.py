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
Implementation of the "scan" command: find swing windows in an OHLC file
and score each with a trained model.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import click
import numpy as np
import pandas as pd

from wyckoff_detector.config import resolve
from wyckoff_detector.constants import FLOAT_FORMAT, Phase
from wyckoff_detector.errors import DataError, OhlcFormatError
from wyckoff_detector.nn.checkpoint import load_model
from wyckoff_detector.rules.swings import (SwingWindow, extract_swings,
                                           windows_of_lows_highs)
from wyckoff_detector.train.metrics import score
from wyckoff_detector.utils import describe_undecodable

LOG = logging.getLogger(__name__)

OHLC_COLUMNS = ["timestamp", "open", "high", "low", "close"]
PRICE_COLUMNS = OHLC_COLUMNS[1:]


@dataclass(frozen=True)
class ScanRow:
    """One scored swing window."""
    timestamp: str
    end_index: int
    probability: float
    detected: int
    window_values: Tuple[float, ...]


def read_ohlc(path: str) -> pd.DataFrame:
    """Load and validate an OHLC CSV with header
    timestamp,open,high,low,close.

    Arguments:
        path {str} -- Source file.

    Raises:
        DataError -- The file cannot be read.
        OhlcFormatError -- Missing columns, ragged or blank rows,
        non-numeric prices, or text that is not UTF-8; row problems name
        the file line number.

    Returns:
        pd.DataFrame -- timestamp as text, prices as float64.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False,
                            skip_blank_lines=False)
    except OSError as error:
        raise DataError("Cannot read OHLC file {}: {}".format(
            path, error.strerror)) from error
    except pd.errors.EmptyDataError:
        raise OhlcFormatError("OHLC file {} is empty".format(path)) from None
    except pd.errors.ParserError as error:
        raise OhlcFormatError("OHLC file {}: {}".format(path, error)) from None
    except UnicodeDecodeError:
        raise OhlcFormatError(describe_undecodable(path,
                                                   "OHLC file")) from None

    frame.columns = [c.strip().lower() for c in frame.columns]
    missing = [c for c in OHLC_COLUMNS if c not in frame.columns]
    if missing:
        raise OhlcFormatError("OHLC file {} is missing columns: {}".format(
            path, ", ".join(missing)))

    for column in PRICE_COLUMNS:
        numeric = pd.to_numeric(frame[column], errors="coerce")
        bad = numeric.isna() | ~np.isfinite(numeric.fillna(0.0))
        if bad.any():
            # header is line 1, first data row line 2; blank lines are kept
            # as rows so the index maps straight to the file line
            lines = [int(i) + 2 for i in frame.index[bad.to_numpy()][:10]]
            raise OhlcFormatError(
                "OHLC file {}: non-numeric {} on line(s) {}".format(
                    path, column, ", ".join(str(n) for n in lines)))
        frame[column] = numeric.astype(np.float64)
    return frame


def rescale(values: Tuple[float, ...]) -> Optional[np.ndarray]:
    """Min-max rescale a window onto [0, 1], the range the model was
    trained on after dividing by 100. Constant windows return None."""
    window = np.asarray(values, dtype=np.float64)
    span = window.max() - window.min()
    if span <= 0:
        return None
    return (window - window.min()) / span


def scan_rows(close: np.ndarray, timestamps: List[str], model, k: int,
              threshold: float = 0.5,
              workers: int = 1) -> Tuple[List[ScanRow], int]:
    """Score every swing window of the close series.

    Returns:
        Tuple[List[ScanRow], int] -- Rows in window order, and the number
        of constant windows skipped.
    """
    try:
        swings = extract_swings(close, k)
    except ValueError as error:
        LOG.warning("No swings: %s", error)
        return [], 0
    windows: List[SwingWindow] = windows_of_lows_highs(swings,
                                                       model.pattern_width)
    kept, patterns = [], []
    for window in windows:
        scaled = rescale(window.values)
        if scaled is None:
            continue
        kept.append(window)
        patterns.append(scaled)
    skipped = len(windows) - len(kept)
    if not kept:
        return [], skipped

    probabilities = score(model, np.vstack(patterns), workers)
    rows = [
        ScanRow(timestamps[w.end_index], w.end_index, float(p),
                int(p >= threshold), w.values)
        for w, p in zip(kept, probabilities)
    ]
    return rows, skipped


def write_scan(rows: List[ScanRow], width: int, path: str) -> None:
    """Write scan rows as CSV
    timestamp,end_index,probability,p1..pN,detected."""
    value_columns = ["p{}".format(i) for i in range(1, width + 1)]
    columns = ["timestamp", "end_index", "probability"
               ] + value_columns + ["detected"]
    frame = pd.DataFrame(
        [[r.timestamp, r.end_index, r.probability] + list(r.window_values) +
         [r.detected] for r in rows],
        columns=columns)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT,
                 lineterminator="\n")


def scan_command(ohlc_path: str, model_path: str, out_path: str,
                 k: int = None, phase: str = "tr", threshold: float = None,
                 deterministic: bool = False) -> None:
    """Implementation of the scan command.

    Arguments:
        ohlc_path {str} -- OHLC CSV; the close column is scanned.
        model_path {str} -- Checkpoint of a trained model.
        out_path {str} -- Destination CSV.

    Keyword Arguments:
        k {int} -- Swing lookback; config or 5. (default: {None})
        phase {str} -- Phase to scan for. (default: {"tr"})
        threshold {float} -- Detection threshold; config or 0.5.
        deterministic {bool} -- Score on one thread. (default: {False})

    Raises:
        DataError -- The model was trained for another phase.
    """
    wanted = Phase.parse(phase)
    k = resolve(k, "SCAN", "LOOKBACK", 5, int)
    threshold = resolve(threshold, "SCAN", "THRESHOLD", 0.5, float)
    workers = 1 if deterministic else resolve(None, "RUNTIME", "WORKERS", 4,
                                              int)

    model = load_model(model_path)
    if model.phase is not None and model.phase is not wanted:
        raise DataError("phase mismatch: model={} scan={}".format(
            model.phase.name, wanted.name))
    if wanted is Phase.ST:
        LOG.warning("ST scanning is experimental: real prices lack the "
                    "generator's filler structure.")

    frame = read_ohlc(ohlc_path)
    rows, skipped = scan_rows(frame["close"].to_numpy(),
                              frame["timestamp"].tolist(), model, k,
                              threshold, workers)
    write_scan(rows, model.pattern_width, out_path)
    click.echo(
        "scanned {} windows, {} detected, {} constant windows skipped".format(
            len(rows), sum(r.detected for r in rows), skipped),
        err=True)
