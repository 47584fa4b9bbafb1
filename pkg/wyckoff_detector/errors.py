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
Exceptions raised by this program. Each carries the process exit code the
command line uses when it is not handled.
"""

from wyckoff_detector.constants import EXIT_DATA, EXIT_NUMERIC


class WyckoffError(Exception):
    """Base class for all errors raised by this program."""
    exit_code = EXIT_DATA


class DataError(WyckoffError):
    """Input files or in-memory data do not match what was expected."""
    exit_code = EXIT_DATA


class DatasetFormatError(DataError):
    """A pattern dataset CSV is malformed."""


class OhlcFormatError(DataError):
    """An OHLC price file is malformed."""


class FeatureMismatchError(DataError):
    """A model and a dataset disagree on pattern width."""

    def __init__(self, model_width: int, data_width: int):
        super().__init__("feature mismatch: model={} data={}".format(
            model_width, data_width))
        self.model_width = model_width
        self.data_width = data_width


class CheckpointVersionError(DataError):
    """A checkpoint was written by an unsupported format version."""


class CheckpointShapeError(DataError):
    """A checkpoint tensor does not have the shape its header implies."""


class CheckpointFormatError(DataError):
    """A checkpoint is not well-formed (missing fields, bad numerals)."""


class NumericError(WyckoffError):
    """Training or scoring produced a non-finite number."""
    exit_code = EXIT_NUMERIC
