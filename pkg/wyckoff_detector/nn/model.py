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
A single-layer LSTM with a dense sigmoid head, written out in numpy with
hand-derived backpropagation through time.

Per step, with h0 = c0 = 0:

    i = sigmoid(W_i x + U_i h + b_i)      input gate
    f = sigmoid(W_f x + U_f h + b_f)      forget gate
    g = tanh(W_g x + U_g h + b_g)         candidate
    o = sigmoid(W_o x + U_o h + b_o)      output gate
    c = f * c + i * g
    h = o * tanh(c)

and the score is sigmoid(dense_w . h_T + dense_b). Everything is float64.
Batched inputs have shape (B, T, n_features).
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from wyckoff_detector.constants import Phase
from wyckoff_detector.errors import DataError, FeatureMismatchError
from wyckoff_detector.nn.functions import sigmoid

LOG = logging.getLogger(__name__)

GATES = ("i", "f", "g", "o")

Gradients = Dict[str, np.ndarray]


def param_shapes(n_features: int, hidden: int) -> "OrderedDict[str, Tuple]":
    """Names and shapes of every trainable tensor, in checkpoint order."""
    shapes = OrderedDict()
    for gate in GATES:
        shapes["W_" + gate] = (hidden, n_features)
        shapes["U_" + gate] = (hidden, hidden)
        shapes["b_" + gate] = (hidden, )
    shapes["dense_w"] = (1, hidden)
    shapes["dense_b"] = (1, )
    return shapes


@dataclass
class LstmModel:
    """All trainable parameters of the classifier.

    n_features is the width of one time step and steps the number of steps
    a pattern is split into, so a model scores patterns of
    n_features * steps values. Missing parameters start at zero.
    """
    n_features: int
    hidden: int = 64
    steps: int = 1
    phase: Optional[Phase] = None
    params: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_features < 1 or self.hidden < 1 or self.steps < 1:
            raise ValueError("Model dimensions must be positive.")
        for name, shape in self.shapes().items():
            if name not in self.params:
                self.params[name] = np.zeros(shape)
            else:
                self.params[name] = np.asarray(self.params[name],
                                               dtype=np.float64)
        self.check()

    @property
    def pattern_width(self) -> int:
        """Number of raw values in one scored pattern."""
        return self.n_features * self.steps

    def shapes(self) -> "OrderedDict[str, Tuple]":
        """Expected tensor shapes for this model's dimensions."""
        return param_shapes(self.n_features, self.hidden)

    def check(self) -> None:
        """Validate parameter names, shapes, and finiteness.

        Raises:
            DataError -- On the first offending tensor.
        """
        expected = self.shapes()
        unknown = set(self.params) - set(expected)
        if unknown:
            raise DataError("Unknown parameters: {}".format(sorted(unknown)))
        for name, shape in expected.items():
            if self.params[name].shape != shape:
                raise DataError("Parameter {} has shape {}, expected {}".format(
                    name, self.params[name].shape, shape))
            if not np.all(np.isfinite(self.params[name])):
                raise DataError("Parameter {} is not finite".format(name))

    def copy(self) -> "LstmModel":
        """A deep copy."""
        return LstmModel(self.n_features, self.hidden, self.steps, self.phase,
                         {k: v.copy() for k, v in self.params.items()})

    def shape_inputs(self, patterns: np.ndarray) -> np.ndarray:
        """Lay out flat normalized patterns as model input.

        Arguments:
            patterns {np.ndarray} -- (N, pattern_width) matrix.

        Raises:
            FeatureMismatchError -- Width differs from pattern_width.

        Returns:
            np.ndarray -- (N, steps, n_features) array.
        """
        patterns = np.asarray(patterns, dtype=np.float64)
        if patterns.ndim != 2 or patterns.shape[1] != self.pattern_width:
            width = patterns.shape[-1] if patterns.ndim else 0
            raise FeatureMismatchError(self.pattern_width, width)
        return patterns.reshape(patterns.shape[0], self.steps,
                                self.n_features)


@dataclass
class ForwardCache:
    """Activations kept for the backward pass. Per-step arrays have shape
    (T, B, hidden); x has shape (T, B, n_features) and p shape (B,)."""
    x: np.ndarray
    i: np.ndarray
    f: np.ndarray
    g: np.ndarray
    o: np.ndarray
    c: np.ndarray
    h: np.ndarray
    p: np.ndarray

    @property
    def steps(self) -> int:
        return self.x.shape[0]

    @property
    def batch(self) -> int:
        return self.x.shape[1]


def init_params(n_features: int, hidden: int = 64, seed: int = 0,
                steps: int = 1, phase: Optional[Phase] = None) -> LstmModel:
    """Draw a fresh model.

    W, U and dense_w entries are uniform on [-s, s] with s = 1/sqrt(hidden);
    biases are zero except the forget gate bias, which is 1.

    Arguments:
        n_features {int} -- Step width.

    Keyword Arguments:
        hidden {int} -- Cell width. (default: {64})
        seed {int} -- Initialization seed. (default: {0})
        steps {int} -- Steps per pattern. (default: {1})
        phase {Phase} -- Phase recorded with the model. (default: {None})

    Returns:
        LstmModel -- The initialized model.
    """
    if n_features < 1 or hidden < 1:
        raise ValueError("Model dimensions must be positive.")
    rng = np.random.default_rng(seed)
    scale = 1.0 / np.sqrt(hidden)
    params = {}
    for name, shape in param_shapes(n_features, hidden).items():
        if name.startswith(("W_", "U_")) or name == "dense_w":
            params[name] = rng.uniform(-scale, scale, size=shape)
        else:
            params[name] = np.zeros(shape)
    params["b_f"][:] = 1.0
    return LstmModel(n_features, hidden, steps, phase, params)


def _as_batch(m: LstmModel, x) -> Tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim < 3
    if x.ndim == 1:
        x = x[np.newaxis, np.newaxis, :]
    elif x.ndim == 2:
        x = x[np.newaxis, :, :]
    if x.ndim != 3 or x.shape[1] < 1:
        raise DataError("Input must have shape (B, T, n_features).")
    if x.shape[2] != m.n_features:
        raise FeatureMismatchError(m.n_features, x.shape[2])
    return x, single


def forward(m: LstmModel, x) -> Tuple[object, ForwardCache]:
    """Score one pattern or a batch.

    Arguments:
        m {LstmModel} -- The model.
        x -- (T, n_features) for one pattern, (B, T, n_features) for a
        batch. A 1-D vector is one pattern with T = 1.

    Raises:
        FeatureMismatchError -- Step width differs from the model's.

    Returns:
        Tuple -- (probability, cache). probability is a float for one
        pattern and a (B,) array for a batch.
    """
    x, single = _as_batch(m, x)
    batch, steps = x.shape[0], x.shape[1]
    params = m.params
    x_t = np.transpose(x, (1, 0, 2))
    shape = (steps, batch, m.hidden)
    acts = {name: np.empty(shape) for name in ("i", "f", "g", "o", "c", "h")}
    h_prev = np.zeros((batch, m.hidden))
    c_prev = np.zeros((batch, m.hidden))
    for t in range(steps):
        pre = {
            gate: x_t[t] @ params["W_" + gate].T +
            h_prev @ params["U_" + gate].T + params["b_" + gate]
            for gate in GATES
        }
        acts["i"][t] = sigmoid(pre["i"])
        acts["f"][t] = sigmoid(pre["f"])
        acts["g"][t] = np.tanh(pre["g"])
        acts["o"][t] = sigmoid(pre["o"])
        acts["c"][t] = acts["f"][t] * c_prev + acts["i"][t] * acts["g"][t]
        acts["h"][t] = acts["o"][t] * np.tanh(acts["c"][t])
        h_prev, c_prev = acts["h"][t], acts["c"][t]
    logits = h_prev @ params["dense_w"][0] + params["dense_b"][0]
    p = sigmoid(logits)
    cache = ForwardCache(x=x_t, p=p, **acts)
    if single:
        return float(p[0]), cache
    return p, cache


def backward(m: LstmModel, cache: ForwardCache, y) -> Gradients:
    """Exact gradients of the mean binary cross-entropy over the cached
    batch, by backpropagation through time.

    Arguments:
        m {LstmModel} -- The model the cache was produced with.
        cache {ForwardCache} -- From forward().
        y -- Label, or (B,) labels.

    Raises:
        DataError -- Cache and model dimensions disagree.

    Returns:
        Gradients -- One array per parameter name, shaped like the model.
    """
    if cache.x.shape[2] != m.n_features or cache.h.shape[2] != m.hidden:
        raise DataError("Forward cache does not match model dimensions.")
    y = np.broadcast_to(np.asarray(y, dtype=np.float64), (cache.batch, ))
    params = m.params
    grads = {name: np.zeros(shape) for name, shape in m.shapes().items()}

    # sigmoid + cross-entropy: dL/dlogit = p - y
    d_logit = (cache.p - y) / cache.batch
    h_last = cache.h[-1]
    grads["dense_w"][0] = d_logit @ h_last
    grads["dense_b"][0] = d_logit.sum()

    d_h = np.outer(d_logit, params["dense_w"][0])
    d_c = np.zeros_like(d_h)
    zeros = np.zeros_like(d_h)
    for t in reversed(range(cache.steps)):
        i, f, g, o = cache.i[t], cache.f[t], cache.g[t], cache.o[t]
        c_prev = cache.c[t - 1] if t > 0 else zeros
        h_prev = cache.h[t - 1] if t > 0 else zeros
        tanh_c = np.tanh(cache.c[t])

        d_c = d_c + d_h * o * (1.0 - tanh_c**2)
        d_pre = {
            "i": d_c * g * i * (1.0 - i),
            "f": d_c * c_prev * f * (1.0 - f),
            "g": d_c * i * (1.0 - g**2),
            "o": d_h * tanh_c * o * (1.0 - o),
        }
        d_h = zeros.copy()
        for gate in GATES:
            grads["W_" + gate] += d_pre[gate].T @ cache.x[t]
            grads["U_" + gate] += d_pre[gate].T @ h_prev
            grads["b_" + gate] += d_pre[gate].sum(axis=0)
            d_h += d_pre[gate] @ params["U_" + gate]
        d_c = d_c * f
    return grads


def predict(m: LstmModel, patterns: np.ndarray) -> np.ndarray:
    """Probabilities for flat normalized patterns.

    Arguments:
        m {LstmModel} -- The model.
        patterns {np.ndarray} -- (N, pattern_width) values in [0, 1].

    Returns:
        np.ndarray -- (N,) probabilities.
    """
    inputs = m.shape_inputs(patterns)
    if inputs.shape[0] == 0:
        return np.zeros(0)
    p, _ = forward(m, inputs)
    return p
