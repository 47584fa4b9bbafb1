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
Implementation of the "gen" command.
"""

import logging

from wyckoff_detector.config import resolve
from wyckoff_detector.constants import Phase
from wyckoff_detector.synth.dataset import write_dataset
from wyckoff_detector.synth.generators import GenSpec, gen_dataset

LOG = logging.getLogger(__name__)


def gen_command(phase: str, n_valid: int, n_invalid: int, seed: int,
                out_path: str, sigma: float = None, fillers: int = None,
                up_fillers: int = None) -> None:
    """Implementation of the gen command: generate a dataset and write it
    as CSV.

    Arguments:
        phase {str} -- "tr" or "st".
        n_valid {int} -- Valid-branch sample count.
        n_invalid {int} -- Invalid-branch sample count.
        seed {int} -- Generation seed.
        out_path {str} -- Destination CSV.

    Keyword Arguments:
        sigma {float} -- ST retest spread; config or 5.0. (default: {None})
        fillers {int} -- ST fillers per gap; config or 2. (default: {None})
        up_fillers {int} -- ST up-fillers; config or 1. (default: {None})
    """
    spec = GenSpec(
        phase=Phase.parse(phase),
        n_valid=n_valid,
        n_invalid=n_invalid,
        seed=seed,
        gauss_sigma=resolve(sigma, "GENERATION", "GAUSS_SIGMA", 5.0, float),
        fillers_per_gap=resolve(fillers, "GENERATION", "FILLERS_PER_GAP", 2,
                                int),
        up_fillers=resolve(up_fillers, "GENERATION", "UP_FILLERS", 1, int))
    LOG.debug("Generation spec: %s", spec)
    write_dataset(gen_dataset(spec), out_path)
