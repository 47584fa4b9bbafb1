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
Training configuration and per-epoch history records.
"""

from dataclasses import dataclass

from wyckoff_detector.constants import KERNEL_STEP_SCALE, NORMALIZATION


@dataclass(frozen=True)
class TrainConfig:
    """Optimizer and data-handling settings for one training run.

    sequential feeds each pattern one value per time step instead of as a
    single step of full width. kernel_step_scale multiplies the Adam step
    of the input kernels W_i, W_f, W_g and W_o.
    """
    epochs: int = 10
    batch_size: int = 32
    learning_rate: float = 1e-3
    split_test_fraction: float = 0.2
    shuffle_seed: int = 0
    hidden: int = 64
    sequential: bool = False
    workers: int = 1
    kernel_step_scale: float = KERNEL_STEP_SCALE
    normalization: float = NORMALIZATION

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be at least 1, got {}".format(
                self.epochs))
        if self.batch_size < 1:
            raise ValueError("batch_size must be at least 1, got {}".format(
                self.batch_size))
        if not 0.0 < self.split_test_fraction < 1.0:
            raise ValueError(
                "split_test_fraction must be in (0, 1), got {}".format(
                    self.split_test_fraction))
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive.")
        if self.hidden < 1:
            raise ValueError("hidden must be at least 1.")
        if not self.kernel_step_scale > 0:
            raise ValueError("kernel_step_scale must be positive.")
        if self.normalization != NORMALIZATION:
            raise ValueError("normalization is fixed at {}".format(
                NORMALIZATION))


@dataclass(frozen=True)
class EpochRecord:
    """Metrics after one epoch, on both subsets."""
    epoch: int
    train_loss: float
    train_acc: float
    test_loss: float
    test_acc: float
