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
Labeled pattern samples, datasets, and their CSV file format.

File layout (UTF-8, LF line endings):

    # phase=TR seed=7
    label,x1,x2,x3,x4
    1,83.118...,12.5...,...

The comment line is required and parsed. Values are written at 17
significant digits, so a write/read round trip is exact. Generator anchors
are not written.
"""

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from wyckoff_detector.constants import FLOAT_FORMAT, PRICE_CEILING, Phase
from wyckoff_detector.errors import DataError, DatasetFormatError
from wyckoff_detector.utils import describe_undecodable

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class PatternSample:
    """One labeled pattern. anchors holds the swing values the generator
    built the pattern from; it is not serialized."""
    label: int
    values: Tuple[float, ...]
    anchors: Optional[Tuple[float, ...]] = field(default=None, compare=False)


@dataclass
class Dataset:
    """An ordered collection of samples of one phase and width."""
    phase: Phase
    n_features: int
    samples: List[PatternSample] = field(default_factory=list)
    seed: Optional[int] = None

    def __post_init__(self):
        if self.n_features < 1:
            raise ValueError("n_features must be positive.")
        for position, sample in enumerate(self.samples):
            if len(sample.values) != self.n_features:
                raise DataError(
                    "Sample {} has {} values; dataset width is {}.".format(
                        position, len(sample.values), self.n_features))

    def __len__(self) -> int:
        return len(self.samples)

    def labels(self) -> np.ndarray:
        """Labels as an int vector of length N."""
        return np.array([s.label for s in self.samples], dtype=np.int64)

    def values(self) -> np.ndarray:
        """Raw values as an (N, n_features) float64 matrix."""
        if not self.samples:
            return np.zeros((0, self.n_features))
        return np.array([s.values for s in self.samples], dtype=np.float64)

    def subset(self, indices: Sequence[int]) -> "Dataset":
        """A new dataset holding the samples at indices, in that order."""
        return Dataset(self.phase, self.n_features,
                       [self.samples[i] for i in indices], self.seed)


def _comment_line(d: Dataset) -> str:
    tokens = ["phase={}".format(d.phase.name)]
    if d.seed is not None:
        tokens.append("seed={}".format(d.seed))
    if d.n_features != d.phase.value:
        tokens.append("n_features={}".format(d.n_features))
    return "# " + " ".join(tokens)


def header_row(n_features: int) -> List[str]:
    """The CSV header for a dataset of the given width."""
    return ["label"] + ["x{}".format(i) for i in range(1, n_features + 1)]


def write_dataset(d: Dataset, path: str) -> None:
    """Write a dataset as CSV.

    Arguments:
        d {Dataset} -- The dataset to write.
        path {str} -- Destination file; overwritten.
    """
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(_comment_line(d) + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header_row(d.n_features))
        for sample in d.samples:
            writer.writerow([sample.label] +
                            [FLOAT_FORMAT % v for v in sample.values])
    LOG.info("Wrote %s samples to %s.", len(d), path)


def _parse_comment(line: str) -> Dict[str, str]:
    if not line.startswith("#"):
        raise DatasetFormatError(
            "line 1: expected a '# phase=<TR|ST> seed=<n>' comment line, "
            "got {!r}".format(line))
    fields = {}
    for token in line[1:].split():
        key, sep, value = token.partition("=")
        if not sep:
            raise DatasetFormatError(
                "line 1: malformed token {!r} in comment line".format(token))
        fields[key] = value
    return fields


def read_dataset(path: str) -> Dataset:
    """Read a dataset CSV written by write_dataset.

    Arguments:
        path {str} -- Source file.

    Raises:
        DataError -- The file cannot be opened.
        DatasetFormatError -- Malformed comment line or header, wrong column
        count, non-numeric cell, or label outside {0, 1}; the message names
        the line number.

    Returns:
        Dataset -- The dataset, without generator anchors.
    """
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as error:
        raise DataError("Cannot read dataset {}: {}".format(
            path, error.strerror)) from error

    with handle:
        try:
            return _read_body(handle, path)
        except UnicodeDecodeError:
            raise DatasetFormatError(describe_undecodable(
                path, "Dataset")) from None


def _read_body(handle, path: str) -> Dataset:
    first = handle.readline().rstrip("\r\n")
    fields = _parse_comment(first)
    try:
        phase = Phase.parse(fields.get("phase", ""))
    except ValueError as error:
        raise DatasetFormatError("line 1: {}".format(error)) from None
    try:
        seed = int(fields["seed"]) if "seed" in fields else None
        n_features = int(fields.get("n_features", phase.value))
    except ValueError:
        raise DatasetFormatError(
            "line 1: seed and n_features must be integers") from None

    reader = csv.reader(handle)
    header = next(reader, None)
    if header is None:
        raise DatasetFormatError("line 2: missing header")
    if header != header_row(n_features):
        raise DatasetFormatError(
            "line 2: header must be 'label,x1,...,x{0}' ({0} value "
            "columns for phase {1}), got {2} value columns".format(
                n_features, phase.name, len(header) - 1))

    samples = []
    for row in reader:
        line_number = reader.line_num + 1
        if not row:
            continue
        samples.append(_parse_row(row, n_features, line_number))

    LOG.debug("Read %s samples from %s.", len(samples), path)
    return Dataset(phase, n_features, samples, seed)


def _parse_row(row: List[str], n_features: int,
               line_number: int) -> PatternSample:
    if len(row) != n_features + 1:
        raise DatasetFormatError(
            "line {}: expected {} columns (label + {} values), got {}".format(
                line_number, n_features + 1, n_features, len(row)))
    label_text = row[0].strip()
    if label_text not in ("0", "1"):
        raise DatasetFormatError(
            "line {}: label must be 0 or 1, got {!r}".format(
                line_number, row[0]))
    values = []
    for column, cell in enumerate(row[1:], start=1):
        try:
            value = float(cell)
        except ValueError:
            raise DatasetFormatError(
                "line {}: x{} is not a number: {!r}".format(
                    line_number, column, cell)) from None
        if not math.isfinite(value) or not 0.0 <= value <= PRICE_CEILING:
            raise DatasetFormatError(
                "line {}: x{}={} is outside [0, {}]".format(
                    line_number, column, cell, PRICE_CEILING))
        values.append(value)
    return PatternSample(int(label_text), tuple(values))
