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

"""Shared fixtures."""

from configparser import ConfigParser

import numpy as np
import pytest

from wyckoff_detector.config import CONFIG_HOLDER
from wyckoff_detector.constants import Phase
from wyckoff_detector.synth.dataset import Dataset, PatternSample
from wyckoff_detector.synth.generators import GenSpec, gen_dataset


class ScriptedRng:
    """Stands in for a numpy Generator: returns scripted uniform and normal
    draws first, then falls through to a real seeded stream."""

    def __init__(self, uniforms=(), normals=(), seed=0):
        self.uniforms = list(uniforms)
        self.normals = list(normals)
        self.real = np.random.default_rng(seed)

    def uniform(self, low=0.0, high=1.0, size=None):
        if self.uniforms and size is None:
            return self.uniforms.pop(0)
        return self.real.uniform(low, high, size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        if self.normals and size is None:
            return self.normals.pop(0)
        return self.real.normal(loc, scale, size)


@pytest.fixture(autouse=True)
def empty_config():
    """Run every test against an empty configuration."""
    CONFIG_HOLDER.config = ConfigParser()
    yield
    CONFIG_HOLDER.config = ConfigParser()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tr_dataset():
    return gen_dataset(GenSpec(Phase.TR, 60, 60, seed=11))


@pytest.fixture
def st_dataset():
    return gen_dataset(GenSpec(Phase.ST, 40, 40, seed=12))


def make_separable(n_per_class=100, seed=3, n_features=4):
    """Valid samples on [60, 100], invalid on [0, 40]: a threshold on the
    mean value classifies them perfectly."""
    rng = np.random.default_rng(seed)
    samples = [
        PatternSample(1, tuple(rng.uniform(60, 100, n_features)))
        for _ in range(n_per_class)
    ] + [
        PatternSample(0, tuple(rng.uniform(0, 40, n_features)))
        for _ in range(n_per_class)
    ]
    return Dataset(Phase.TR, n_features, samples, seed)


@pytest.fixture
def separable_dataset():
    return make_separable()
