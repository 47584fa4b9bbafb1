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
Implementation of the "train" command.
"""

import logging
import math

import click

from wyckoff_detector.config import resolve
from wyckoff_detector.constants import KERNEL_STEP_SCALE
from wyckoff_detector.errors import NumericError
from wyckoff_detector.nn.checkpoint import save_model
from wyckoff_detector.synth.dataset import read_dataset
from wyckoff_detector.train.loop import train
from wyckoff_detector.train.metrics import format_metric
from wyckoff_detector.train.reports import write_history
from wyckoff_detector.train.settings import TrainConfig

LOG = logging.getLogger(__name__)


def train_command(data_path: str,
                  model_out: str,
                  history_out: str = None,
                  epochs: int = None,
                  lr: float = None,
                  batch: int = None,
                  seed: int = 0,
                  deterministic: bool = False,
                  hidden: int = None,
                  sequential: bool = False,
                  init_seed: int = None,
                  test_fraction: float = None,
                  kernel_step_scale: float = None) -> None:
    """Implementation of the train command: split, train, save the
    checkpoint and history, and print the final test metrics.

    Arguments:
        data_path {str} -- Dataset CSV.
        model_out {str} -- Checkpoint destination.

    Keyword Arguments:
        history_out {str} -- History CSV destination, if wanted.
        epochs, lr, batch, hidden, test_fraction, kernel_step_scale --
        Overrides for the [TRAINING] config values.
        seed {int} -- Shuffle seed. (default: {0})
        deterministic {bool} -- Force single-threaded measurement.
        sequential {bool} -- Feed one value per time step.
        init_seed {int} -- Initialization seed; config, else seed.
    """
    workers = 1 if deterministic else resolve(None, "RUNTIME", "WORKERS", 4,
                                              int)
    cfg = TrainConfig(
        epochs=resolve(epochs, "TRAINING", "EPOCHS", 10, int),
        batch_size=resolve(batch, "TRAINING", "BATCH_SIZE", 32, int),
        learning_rate=resolve(lr, "TRAINING", "LEARNING_RATE", 1e-3, float),
        split_test_fraction=resolve(test_fraction, "TRAINING",
                                    "TEST_FRACTION", 0.2, float),
        shuffle_seed=seed,
        hidden=resolve(hidden, "TRAINING", "HIDDEN", 64, int),
        sequential=sequential,
        workers=workers,
        kernel_step_scale=resolve(kernel_step_scale, "TRAINING",
                                  "KERNEL_STEP_SCALE", KERNEL_STEP_SCALE,
                                  float))
    init_seed = resolve(init_seed, "TRAINING", "INIT_SEED", seed, int)

    dataset = read_dataset(data_path)
    model, history = train(dataset, cfg, init_seed)
    final = history[-1]
    if not (math.isfinite(final.test_loss) and math.isfinite(final.train_loss)):
        raise NumericError("Training finished with a non-finite loss.")

    save_model(model, model_out)
    if history_out:
        write_history(history, history_out)
    click.echo("test_loss={} test_acc={}".format(
        format_metric(final.test_loss), format_metric(final.test_acc)))
