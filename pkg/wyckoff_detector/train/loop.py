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
Dataset splitting and the mini-batch training loop.
"""

import logging
import math
from typing import List, Tuple

import numpy as np

from wyckoff_detector.errors import DataError, NumericError
from wyckoff_detector.nn.functions import bce_loss
from wyckoff_detector.nn.model import (GATES, LstmModel, backward, forward,
                                       init_params)
from wyckoff_detector.nn.optim import AdamState, adam_step
from wyckoff_detector.synth.dataset import Dataset
from wyckoff_detector.train.metrics import loss_and_accuracy, normalized_values
from wyckoff_detector.train.settings import EpochRecord, TrainConfig

LOG = logging.getLogger(__name__)


def split(d: Dataset, cfg: TrainConfig) -> Tuple[Dataset, Dataset]:
    """Shuffle by cfg.shuffle_seed and hold out the last
    ceil(N * split_test_fraction) samples for testing.

    Arguments:
        d {Dataset} -- Data to split.
        cfg {TrainConfig} -- Supplies the seed and fraction.

    Raises:
        DataError -- The dataset is empty, or too small to leave any
        training samples.

    Returns:
        Tuple[Dataset, Dataset] -- (train, test), both tagged with d's phase.
    """
    total = len(d)
    if not total:
        raise DataError("Cannot split an empty dataset.")
    # rounding keeps e.g. 10 * 0.2 from landing just above 2
    n_test = max(1, math.ceil(round(total * cfg.split_test_fraction, 9)))
    if n_test >= total:
        raise DataError(
            "Dataset of {} samples is too small to split at {}".format(
                total, cfg.split_test_fraction))
    order = np.random.default_rng(cfg.shuffle_seed).permutation(total)
    return d.subset(order[:total - n_test]), d.subset(order[total - n_test:])


def train(d: Dataset, cfg: TrainConfig,
          init_seed: int = 0) -> Tuple[LstmModel, List[EpochRecord]]:
    """Train a fresh model on d with mini-batch Adam.

    The data is split with split(); each epoch visits the training subset
    in a new shuffled order, trains on every batch including a short last
    one, and then measures both subsets.

    Arguments:
        d {Dataset} -- Training data; its phase fixes the pattern width.
        cfg {TrainConfig} -- Run settings.

    Keyword Arguments:
        init_seed {int} -- Parameter initialization seed. (default: {0})

    Raises:
        NumericError -- A batch loss is not finite.

    Returns:
        Tuple[LstmModel, List[EpochRecord]] -- Final model and history.
    """
    train_set, test_set = split(d, cfg)
    if cfg.sequential:
        model = init_params(1, cfg.hidden, init_seed, d.n_features, d.phase)
    else:
        model = init_params(d.n_features, cfg.hidden, init_seed, 1, d.phase)
    state = AdamState.for_model(model)
    step_scales = {"W_" + gate: cfg.kernel_step_scale for gate in GATES}

    train_patterns = normalized_values(train_set)
    test_patterns = normalized_values(test_set)
    train_labels = train_set.labels()
    test_labels = test_set.labels()
    inputs = model.shape_inputs(train_patterns)
    LOG.info("Training %s model on %s samples, testing on %s.", d.phase.name,
             len(train_set), len(test_set))

    # separate stream from the split so epochs reshuffle independently
    rng = np.random.default_rng([cfg.shuffle_seed, 1])
    history = []
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(len(train_set))
        for start in range(0, len(order), cfg.batch_size):
            batch = order[start:start + cfg.batch_size]
            probabilities, cache = forward(model, inputs[batch])
            batch_loss = float(
                np.mean(bce_loss(probabilities, train_labels[batch])))
            if not math.isfinite(batch_loss):
                raise NumericError(
                    "Non-finite loss in epoch {} at batch offset {}".format(
                        epoch, start))
            LOG.debug("epoch %s offset %s loss %.6f", epoch, start,
                      batch_loss)
            grads = backward(model, cache, train_labels[batch])
            adam_step(model, grads, state, cfg.learning_rate,
                      step_scales=step_scales)

        train_loss, train_acc = loss_and_accuracy(model, train_patterns,
                                                  train_labels, cfg.workers)
        test_loss, test_acc = loss_and_accuracy(model, test_patterns,
                                                test_labels, cfg.workers)
        record = EpochRecord(epoch, train_loss, train_acc, test_loss,
                             test_acc)
        history.append(record)
        LOG.info(
            "Epoch %s/%s: train_loss=%.6f train_acc=%.4f "
            "test_loss=%.6f test_acc=%.4f", epoch, cfg.epochs, train_loss,
            train_acc, test_loss, test_acc)
    return model, history
