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
Utility functions not specific to any submodule.
"""

import logging
import sys
from configparser import ConfigParser
from typing import Optional

from wyckoff_detector.constants import PROGRAM_ROOT_LOGGER_NAME


def validate_log_level(level: str) -> bool:
    """Test whether a log level is valid.

    Arguments:
        level {str} -- The log level to test.

    Returns:
        bool -- True if the log level is valid.
    """
    return isinstance(logging.getLevelName(level.upper()), int)


def set_program_log_level(command_line_arg, config: ConfigParser) -> str:
    """Set the log level for the root logger for this program.

    Arguments:
        command_line_arg {str} -- Level given on the command line, or None.
        config {ConfigParser} -- Configuration given to the program.

    Returns:
        str -- The level that was applied.
    """
    program_root_logger = logging.getLogger(PROGRAM_ROOT_LOGGER_NAME)
    level = 'INFO'  # Default log level
    set_by = 'default'
    if config.get('RUNTIME', 'LOG_LEVEL', fallback=None):
        # Config file should override the default
        candidate = config['RUNTIME']['LOG_LEVEL']
        if validate_log_level(candidate):
            level = candidate.upper()
            set_by = 'config file'
        else:
            print("Invalid log level from config file: {}".format(candidate),
                  file=sys.stderr)
    if command_line_arg:
        # Argument should override the config file and the default
        candidate = command_line_arg
        if validate_log_level(candidate):
            level = candidate.upper()
            set_by = 'command line argument'
        else:
            print("Invalid log level from command line: {}".format(candidate),
                  file=sys.stderr)
    program_root_logger.setLevel(level)
    print("Log level is {}, set by {}".format(level, set_by), file=sys.stderr)
    return level


def first_undecodable_line(path: str,
                           encoding: str = "utf-8") -> Optional[int]:
    """Find the first line of a file that does not decode.

    Arguments:
        path {str} -- File to inspect.

    Keyword Arguments:
        encoding {str} -- Expected text encoding. (default: {"utf-8"})

    Returns:
        Optional[int] -- 1-based line number, or None if every line decodes
        or the file cannot be read.
    """
    try:
        with open(path, "rb") as handle:
            for number, raw in enumerate(handle, start=1):
                try:
                    raw.decode(encoding)
                except UnicodeDecodeError:
                    return number
    except OSError:
        return None
    return None


def describe_undecodable(path: str, what: str) -> str:
    """Error text for a file that is not valid UTF-8, naming the first bad
    line when it can be found."""
    line = first_undecodable_line(path)
    where = " on line {}".format(line) if line else ""
    return "{} {} is not valid UTF-8 text{}".format(what, path, where)
