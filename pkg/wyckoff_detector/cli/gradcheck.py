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
Implementation of the "gradcheck" command.
"""

import itertools
import logging
from typing import Sequence

import click
import numpy as np

from wyckoff_detector.constants import Phase
from wyckoff_detector.errors import NumericError
from wyckoff_detector.nn.gradcheck import TOLERANCE, grad_check, random_model
from wyckoff_detector.synth.generators import gen_st_sample, gen_tr_sample

LOG = logging.getLogger(__name__)


def gradcheck_command(trials: int = 20,
                      hiddens: Sequence[int] = (2, 4, 8),
                      seed: int = 0,
                      delta: float = 1e-5,
                      sequential: bool = False,
                      phase: str = None) -> None:
    """Implementation of the gradcheck command. Trials cycle through the
    given hidden widths and the chosen phase, or both phases.

    Raises:
        NumericError -- Some trial exceeded the tolerance.
    """
    rng = np.random.default_rng(seed)
    phases = (Phase.parse(phase), ) if phase else tuple(Phase)
    combos = itertools.cycle(itertools.product(hiddens, phases))
    failures = 0
    worst = 0.0
    for trial, (hidden, trial_phase) in zip(range(trials), combos):
        if trial_phase is Phase.TR:
            sample = gen_tr_sample(rng, bool(trial % 2))
        else:
            sample = gen_st_sample(rng)
        width = len(sample.values)
        if sequential:
            model = random_model(1, hidden, seed + trial, steps=width)
        else:
            model = random_model(width, hidden, seed + trial)
        error = grad_check(model, sample, delta)
        worst = max(worst, error)
        passed = error < TOLERANCE
        failures += not passed
        click.echo("trial={} phase={} hidden={} max_rel_error={:.3e} {}".format(
            trial, trial_phase.name, hidden, error, "ok" if passed else "FAIL"))
    LOG.info("Gradient check: %s trials, worst relative error %.3e.", trials,
             worst)
    if failures:
        raise NumericError("{} of {} gradient checks exceeded {}".format(
            failures, trials, TOLERANCE))
