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

import numpy as np
import pytest

from wyckoff_detector.errors import DataError
from wyckoff_detector.nn.model import init_params
from wyckoff_detector.nn.optim import AdamState, adam_step, adam_update


@pytest.mark.parametrize("grad,direction", [(0.3, -1.0), (-2.5, 1.0)])
def test_first_step_moves_by_learning_rate(grad, direction):
    params = {"w": np.array([1.0])}
    adam_update(params, {"w": np.array([grad])}, AdamState(), lr=1e-3)
    assert params["w"][0] - 1.0 == pytest.approx(direction * 1e-3, abs=1e-9)


def test_zero_gradient_from_fresh_state():
    params = {"w": np.array([0.25, -4.0])}
    state = adam_update(params, {"w": np.zeros(2)}, AdamState())
    assert np.array_equal(params["w"], [0.25, -4.0])
    assert np.all(state.m["w"] == 0.0)
    assert np.all(state.v["w"] == 0.0)


def test_zero_gradient_decays_moments():
    state = AdamState({"w": np.array([0.5])}, {"w": np.array([0.25])}, 3)
    adam_update({"w": np.array([1.0])}, {"w": np.zeros(1)}, state)
    assert state.m["w"][0] == pytest.approx(0.45, rel=1e-12)
    assert state.v["w"][0] == pytest.approx(0.24975, rel=1e-12)
    assert state.t == 4


def test_two_steps_unrolled():
    lr, b1, b2, eps = 0.01, 0.9, 0.999, 1e-8
    g1, g2 = 0.5, -0.2
    params = {"w": np.array([2.0])}
    state = AdamState()
    adam_update(params, {"w": np.array([g1])}, state, lr, b1, b2, eps)
    adam_update(params, {"w": np.array([g2])}, state, lr, b1, b2, eps)

    w, m, v = 2.0, 0.0, 0.0
    for t, g in ((1, g1), (2, g2)):
        m = b1 * m + (1 - b1) * g
        v = b2 * v + (1 - b2) * g * g
        w -= lr * (m / (1 - b1**t)) / ((v / (1 - b2**t))**0.5 + eps)
    assert params["w"][0] == pytest.approx(w, rel=1e-12)
    assert state.m["w"][0] == pytest.approx(m, rel=1e-12)
    assert state.v["w"][0] == pytest.approx(v, rel=1e-12)


def test_second_moment_stays_non_negative(rng):
    params = {"w": np.zeros(20)}
    state = AdamState()
    for _ in range(50):
        adam_update(params, {"w": rng.normal(size=20)}, state)
        assert np.all(state.v["w"] >= 0.0)


def test_mismatched_gradients_are_rejected():
    params = {"w": np.zeros(2)}
    state = AdamState()
    with pytest.raises(DataError):
        adam_update(params, {"v": np.zeros(2)}, state)
    with pytest.raises(DataError):
        adam_update(params, {"w": np.zeros(3)}, state)
    assert state.t == 0


def test_adam_step_on_model():
    m = init_params(4, 3, seed=0)
    state = AdamState.for_model(m)
    before = m.params["dense_b"].copy()
    grads = {k: np.ones_like(v) for k, v in m.params.items()}
    stepped, state = adam_step(m, grads, state, lr=0.1)
    assert stepped is m
    assert state.t == 1
    assert m.params["dense_b"][0] == pytest.approx(before[0] - 0.1, abs=1e-7)


def test_step_scales_multiply_the_step():
    params = {"w": np.array([1.0]), "b": np.array([1.0])}
    grads = {"w": np.array([0.4]), "b": np.array([0.4])}
    adam_update(params, grads, AdamState(), lr=1e-3, step_scales={"w": 20.0})
    assert params["w"][0] == pytest.approx(1.0 - 0.02, abs=1e-9)
    assert params["b"][0] == pytest.approx(1.0 - 1e-3, abs=1e-9)


def test_unknown_step_scale_is_rejected():
    params = {"w": np.array([1.0])}
    state = AdamState()
    with pytest.raises(DataError, match="unknown tensors"):
        adam_update(params, {"w": np.array([1.0])}, state,
                    step_scales={"W_x": 2.0})
    assert state.t == 0
    assert params["w"][0] == 1.0


def test_adam_step_scales_only_kernels():
    m = init_params(4, 3, seed=0)
    before = {k: v.copy() for k, v in m.params.items()}
    grads = {k: np.ones_like(v) for k, v in m.params.items()}
    adam_step(m, grads, AdamState.for_model(m), lr=0.01,
              step_scales={"W_i": 10.0})
    assert np.allclose(m.params["W_i"], before["W_i"] - 0.1, atol=1e-7)
    assert np.allclose(m.params["W_f"], before["W_f"] - 0.01, atol=1e-7)
