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
Central finite-difference verification of the analytic gradients.
"""

import logging

import numpy as np

from wyckoff_detector.constants import NORMALIZATION
from wyckoff_detector.nn.functions import bce_loss
from wyckoff_detector.nn.model import LstmModel, backward, forward
from wyckoff_detector.synth.dataset import PatternSample

LOG = logging.getLogger(__name__)

TOLERANCE = 1e-5


def _loss(m: LstmModel, x: np.ndarray, y: int) -> float:
    p, _ = forward(m, x)
    return bce_loss(p, y)


def grad_check(m: LstmModel, sample: PatternSample,
               delta: float = 1e-5) -> float:
    """Compare backward() with central differences on every parameter.

    Arguments:
        m {LstmModel} -- Model to check; restored unchanged afterwards.
        sample {PatternSample} -- Pattern of width m.pattern_width, raw
        values (normalized here).

    Keyword Arguments:
        delta {float} -- Step size in [1e-7, 1e-3]. (default: {1e-5})

    Raises:
        ValueError -- delta out of range.

    Returns:
        float -- Max over all entries of |a - n| / max(|a|, |n|, 1e-8).
    """
    if not 1e-7 <= delta <= 1e-3:
        raise ValueError("delta must be in [1e-7, 1e-3], got {}".format(delta))
    x = m.shape_inputs(np.array([sample.values]) / NORMALIZATION)[0]
    _, cache = forward(m, x)
    analytic = backward(m, cache, sample.label)

    worst = 0.0
    for name, param in m.params.items():
        numeric = np.zeros_like(param)
        for index in np.ndindex(param.shape):
            original = param[index]
            param[index] = original + delta
            plus = _loss(m, x, sample.label)
            param[index] = original - delta
            minus = _loss(m, x, sample.label)
            param[index] = original
            numeric[index] = (plus - minus) / (2.0 * delta)
        scale = np.maximum(np.maximum(np.abs(analytic[name]),
                                      np.abs(numeric)), 1e-8)
        error = float(np.max(np.abs(analytic[name] - numeric) / scale))
        LOG.debug("grad check %s: max relative error %.3e", name, error)
        worst = max(worst, error)
    return worst


def random_model(n_features: int, hidden: int, seed: int, steps: int = 1,
                 scale: float = 0.5) -> LstmModel:
    """A model with every parameter, biases included, drawn from
    N(0, scale^2), so no gradient is zero by construction except where the
    architecture forces it."""
    rng = np.random.default_rng(seed)
    model = LstmModel(n_features, hidden, steps)
    for name, param in model.params.items():
        param[...] = rng.normal(0.0, scale, size=param.shape)
    return model
