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
Activation and loss functions.
"""

import numpy as np

# Probabilities are clamped to [EPSILON, 1 - EPSILON] inside the loss only.
EPSILON = 1e-12


def sigmoid(x):
    """Logistic function, stable for large |x|.

    Negative inputs use exp(x) / (1 + exp(x)) so exp never overflows.

    Arguments:
        x -- A real or an array of reals.

    Returns:
        A float for scalar input, otherwise an array of the same shape.
    """
    arr = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(arr)
    out = np.empty_like(flat)
    positive = flat >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-flat[positive]))
    exp_x = np.exp(flat[~positive])
    out[~positive] = exp_x / (1.0 + exp_x)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def bce_loss(p, y):
    """Binary cross-entropy of probability p against label y.

    Arguments:
        p -- Probability or array of probabilities.
        y -- Label or array of labels in {0, 1}.

    Returns:
        A non-negative float for scalar input, otherwise an array.
    """
    p = np.clip(np.asarray(p, dtype=np.float64), EPSILON, 1.0 - EPSILON)
    y = np.asarray(y, dtype=np.float64)
    loss = -(y * np.log(p) + (1.0 - y) * np.log1p(-p))
    if loss.ndim == 0:
        return float(loss)
    return loss
