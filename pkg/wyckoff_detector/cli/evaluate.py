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
Implementation of the "eval" command.
"""

import logging

import click

from wyckoff_detector.config import resolve
from wyckoff_detector.errors import DataError, FeatureMismatchError
from wyckoff_detector.nn.checkpoint import load_model
from wyckoff_detector.synth.dataset import read_dataset
from wyckoff_detector.train.metrics import evaluate
from wyckoff_detector.train.reports import write_roc

LOG = logging.getLogger(__name__)


def eval_command(model_path: str, data_path: str, roc_out: str = None,
                 threshold: float = 0.5, deterministic: bool = False) -> None:
    """Implementation of the eval command: score a dataset with a saved
    model, print the report line, and optionally write the ROC curve.

    Arguments:
        model_path {str} -- Checkpoint.
        data_path {str} -- Dataset CSV.

    Keyword Arguments:
        roc_out {str} -- ROC CSV destination. (default: {None})
        threshold {float} -- Decision threshold. (default: {0.5})
        deterministic {bool} -- Score on one thread. (default: {False})

    Raises:
        FeatureMismatchError -- Model and data widths differ.
        DataError -- Model and data phases differ.
    """
    model = load_model(model_path)
    dataset = read_dataset(data_path)
    if model.pattern_width != dataset.n_features:
        raise FeatureMismatchError(model.pattern_width, dataset.n_features)
    if model.phase is not None and model.phase is not dataset.phase:
        raise DataError("phase mismatch: model={} data={}".format(
            model.phase.name, dataset.phase.name))

    workers = 1 if deterministic else resolve(None, "RUNTIME", "WORKERS", 4,
                                              int)
    report = evaluate(model, dataset, threshold, workers)
    if roc_out:
        write_roc(report, roc_out)
    click.echo(report.summary())
