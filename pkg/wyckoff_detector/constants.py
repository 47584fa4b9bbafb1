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
Program-wide constants.
"""

from enum import Enum

PROGRAM_ROOT_LOGGER_NAME = "wyckoff_detector"

# Raw pattern values live in [0, PRICE_CEILING]; the model sees value / 100.
PRICE_CEILING = 100.0
NORMALIZATION = 100.0

# Adam step multiplier for the input kernels W_*. Dividing inputs by
# NORMALIZATION slows kernel learning by that factor at a fixed step size.
KERNEL_STEP_SCALE = 20.0

# Stable process exit codes.
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

CHECKPOINT_FORMAT_VERSION = 1

# %.17g round-trips every double exactly.
FLOAT_FORMAT = "%.17g"


class Phase(Enum):
    """
    Wyckoff accumulation phases this program knows how to generate and
    score. The value is the pattern width under default generator settings.
    """
    TR = 4
    ST = 10

    @classmethod
    def parse(cls, name: str) -> "Phase":
        """Look up a phase by name, case-insensitively.

        Arguments:
            name {str} -- "TR" or "ST", in any case.

        Raises:
            ValueError -- For any other name.

        Returns:
            Phase -- The matching phase.
        """
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError("Unknown phase {!r}; expected TR or ST.".format(
                name)) from None
