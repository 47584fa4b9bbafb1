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
Model checkpoints: one JSON document holding the format version, model
dimensions, and every parameter tensor as a flat row-major list of numbers
written at 17 significant digits.
"""

import json
import logging
import math
from typing import Dict

import numpy as np

from wyckoff_detector.constants import (CHECKPOINT_FORMAT_VERSION,
                                        FLOAT_FORMAT, Phase)
from wyckoff_detector.errors import (CheckpointFormatError,
                                     CheckpointShapeError,
                                     CheckpointVersionError, DataError)
from wyckoff_detector.nn.model import LstmModel, param_shapes
from wyckoff_detector.utils import describe_undecodable

LOG = logging.getLogger(__name__)


def _tensor_text(values: np.ndarray) -> str:
    return "[" + ", ".join(FLOAT_FORMAT % v for v in values.ravel()) + "]"


def save_model(m: LstmModel, path: str) -> None:
    """Write a checkpoint.

    Arguments:
        m {LstmModel} -- The model to save.
        path {str} -- Destination file; overwritten.
    """
    m.check()
    header = {
        "format_version": CHECKPOINT_FORMAT_VERSION,
        "phase": m.phase.name if m.phase else None,
        "n_features": m.n_features,
        "hidden": m.hidden,
        "steps": m.steps,
    }
    lines = ["{"]
    for key, value in header.items():
        lines.append("  {}: {},".format(json.dumps(key), json.dumps(value)))
    lines.append('  "tensors": {')
    names = list(m.shapes())
    for position, name in enumerate(names):
        comma = "," if position < len(names) - 1 else ""
        lines.append("    {}: {}{}".format(json.dumps(name),
                                           _tensor_text(m.params[name]),
                                           comma))
    lines.append("  }")
    lines.append("}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
    LOG.info("Saved %s model (hidden=%s) to %s.",
             header["phase"] or "untagged", m.hidden, path)


def _positive_int(document: Dict, key: str) -> int:
    value = document.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise CheckpointFormatError(
            "Checkpoint field {} must be a positive integer, got {!r}".format(
                key, value))
    return value


def load_model(path: str) -> LstmModel:
    """Read and validate a checkpoint. Nothing is returned unless every
    field and tensor checks out.

    Arguments:
        path {str} -- Source file.

    Raises:
        DataError -- The file cannot be opened.
        CheckpointVersionError -- format_version is not supported.
        CheckpointShapeError -- A tensor has the wrong number of entries;
        the message names it.
        CheckpointFormatError -- Not JSON, missing fields, or a
        malformed or non-finite numeral.

    Returns:
        LstmModel -- The restored model.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as error:
        raise DataError("Cannot read checkpoint {}: {}".format(
            path, error.strerror)) from error
    except UnicodeDecodeError:
        raise CheckpointFormatError(describe_undecodable(
            path, "Checkpoint")) from None
    try:
        document = json.loads(text)
    except ValueError as error:
        raise CheckpointFormatError("Checkpoint {} is malformed: {}".format(
            path, error)) from None
    if not isinstance(document, dict):
        raise CheckpointFormatError(
            "Checkpoint {} is not a JSON object".format(path))

    version = document.get("format_version")
    if version != CHECKPOINT_FORMAT_VERSION:
        raise CheckpointVersionError(
            "Checkpoint {} has format_version {!r}; only {} is supported".
            format(path, version, CHECKPOINT_FORMAT_VERSION))

    n_features = _positive_int(document, "n_features")
    hidden = _positive_int(document, "hidden")
    steps = document.get("steps", 1)
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
        raise CheckpointFormatError(
            "Checkpoint field steps must be a positive integer")
    phase = document.get("phase")
    if phase is not None:
        try:
            phase = Phase.parse(str(phase))
        except ValueError as error:
            raise CheckpointFormatError(str(error)) from None

    tensors = document.get("tensors")
    if not isinstance(tensors, dict):
        raise CheckpointFormatError("Checkpoint has no tensors object")
    params = {}
    for name, shape in param_shapes(n_features, hidden).items():
        if name not in tensors:
            raise CheckpointShapeError(
                "Tensor {} is missing from checkpoint".format(name))
        flat = tensors[name]
        if not isinstance(flat, list):
            raise CheckpointFormatError(
                "Tensor {} is not a list of numbers".format(name))
        expected = int(np.prod(shape))
        if len(flat) != expected:
            raise CheckpointShapeError(
                "Tensor {} has {} entries, expected {} for shape {}".format(
                    name, len(flat), expected, shape))
        for entry in flat:
            if isinstance(entry, bool) or not isinstance(
                    entry, (int, float)) or not math.isfinite(entry):
                raise CheckpointFormatError(
                    "Tensor {} holds a malformed numeral: {!r}".format(
                        name, entry))
        params[name] = np.array(flat, dtype=np.float64).reshape(shape)
    extra = set(tensors) - set(params)
    if extra:
        raise CheckpointShapeError("Unexpected tensors in checkpoint: {}".format(
            sorted(extra)))
    LOG.debug("Loaded checkpoint %s.", path)
    return LstmModel(n_features, hidden, steps, phase, params)
