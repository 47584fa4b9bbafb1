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
Adam optimizer over named parameter tensors.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from wyckoff_detector.errors import DataError
from wyckoff_detector.nn.model import Gradients, LstmModel


@dataclass
class AdamState:
    """First and second moment accumulators plus the step counter."""
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0

    @classmethod
    def for_model(cls, model: LstmModel) -> "AdamState":
        """Zeroed state shaped like model."""
        return cls({k: np.zeros_like(p) for k, p in model.params.items()},
                   {k: np.zeros_like(p) for k, p in model.params.items()})


def adam_update(params: Dict[str, np.ndarray], grads: Gradients,
                state: AdamState, lr: float = 1e-3, beta1: float = 0.9,
                beta2: float = 0.999, eps: float = 1e-8,
                step_scales: Optional[Dict[str, float]] = None) -> AdamState:
    """Apply one bias-corrected Adam step to params, in place.

    step_scales multiplies the step size of the named tensors; tensors not
    named step by lr.

    Arguments:
        params {Dict[str, np.ndarray]} -- Tensors to update.
        grads {Gradients} -- Gradients with the same names and shapes.
        state {AdamState} -- Moments; missing entries start at zero.

    Keyword Arguments:
        lr {float} -- Step size. (default: {1e-3})
        beta1 {float} -- First moment decay. (default: {0.9})
        beta2 {float} -- Second moment decay. (default: {0.999})
        eps {float} -- Denominator guard. (default: {1e-8})
        step_scales {Dict[str, float]} -- Per-tensor step multipliers.
        (default: {None})

    Raises:
        DataError -- Names or shapes of grads and params disagree.

    Returns:
        AdamState -- The same state object, advanced by one step.
    """
    step_scales = step_scales or {}
    unknown = set(step_scales) - set(params)
    if unknown:
        raise DataError("Step scales for unknown tensors: {}".format(
            sorted(unknown)))
    if set(grads) != set(params):
        raise DataError("Gradient names {} do not match parameters {}".format(
            sorted(grads), sorted(params)))
    for name, param in params.items():
        if grads[name].shape != param.shape:
            raise DataError("Gradient {} has shape {}, expected {}".format(
                name, grads[name].shape, param.shape))
    state.t += 1
    correction1 = 1.0 - beta1**state.t
    correction2 = 1.0 - beta2**state.t
    for name, param in params.items():
        grad = grads[name]
        m = state.m.setdefault(name, np.zeros_like(param))
        v = state.v.setdefault(name, np.zeros_like(param))
        m *= beta1
        m += (1.0 - beta1) * grad
        v *= beta2
        v += (1.0 - beta2) * (grad * grad)
        step = lr * step_scales.get(name, 1.0)
        param -= step * (m / correction1) / (np.sqrt(v / correction2) + eps)
    return state


def adam_step(m: LstmModel, grads: Gradients, state: AdamState,
              lr: float = 1e-3, beta1: float = 0.9, beta2: float = 0.999,
              eps: float = 1e-8,
              step_scales: Optional[Dict[str, float]] = None
              ) -> Tuple[LstmModel, AdamState]:
    """One Adam step on a model. The model and state are updated in place
    and returned."""
    adam_update(m.params, grads, state, lr, beta1, beta2, eps, step_scales)
    return m, state
