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
Implementation of the "plot" command.
"""

import logging
import os
from typing import Sequence

import click

from wyckoff_detector.train.plots import plot_accuracy, plot_loss, plot_roc
from wyckoff_detector.train.reports import read_history, read_roc

LOG = logging.getLogger(__name__)


def _label(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def plot_command(histories: Sequence[str] = (),
                 rocs: Sequence[str] = (),
                 out_dir: str = ".") -> None:
    """Implementation of the plot command: render accuracy.png and
    loss.png from history files and roc.png from ROC files.

    Keyword Arguments:
        histories {Sequence[str]} -- History CSVs from train.
        rocs {Sequence[str]} -- ROC CSVs from eval.
        out_dir {str} -- Destination directory; created if missing.

    Raises:
        click.UsageError -- Neither kind of input was given.
    """
    if not histories and not rocs:
        raise click.UsageError("Give at least one --history or --roc file.")
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if histories:
        loaded = {_label(p): read_history(p) for p in histories}
        for name, plot in (("accuracy.png", plot_accuracy),
                           ("loss.png", plot_loss)):
            target = os.path.join(out_dir, name)
            plot(loaded, target)
            written.append(target)
    if rocs:
        target = os.path.join(out_dir, "roc.png")
        plot_roc({_label(p): read_roc(p) for p in rocs}, target)
        written.append(target)
    for target in written:
        click.echo(target)
