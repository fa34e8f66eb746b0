# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""selfaffine package-internal logging module.

All logging from selfaffine goes through the built-in Python logging module. The package
creates one stream handler reporting to stderr; stdout is reserved for command output.
All logging can be stopped completely by invoking the disable_logger() method.

A log message has the following format:
    '<date> <time> [ <logger_name> <logging_level> p#<process_id>.<thread_id>] <log_message>'

The logging level of the selfaffine logger can be configured with an integer in the range of -1 to 6,
representing the following severities:
    -1: logging disabled
     0: fatal messages
     1: errors
     2: warnings
     3: info
     4: debug low
     5: debug medium
     6: debug high

The level is read from SELFAFFINE_DEBUG_LEVEL when the logger is created, from the `debugLevel`
config option, or set through `set_sa_log_level`. The setLevel method should not be used to modify
logging levels of individual module logger instances.

The name of the main logger is `selfaffine`. Each module creates its own child logger by calling
logging.getLogger(__name__).
"""

import logging
import os

ENV_DEBUG_LEVEL = "SELFAFFINE_DEBUG_LEVEL"


class SelfAffineLoggingLevel:
    """Mapping between selfaffine integer debug levels and Python logging module levels."""

    # maps string representation of selfaffine levels to their integer counterpart
    debug_levels = {
        "SA_DEBUG_DISABLE": -1,
        "SA_DEBUG_FATAL": 0,
        "SA_DEBUG_ERROR": 1,
        "SA_DEBUG_WARNING": 2,
        "SA_DEBUG_INFO": 3,
        "SA_DEBUG_LOW": 4,
        "SA_DEBUG_MEDIUM": 5,
        "SA_DEBUG_HIGH": 6,
    }

    # maps selfaffine log levels to python logging module log levels
    logging_map = {
        debug_levels["SA_DEBUG_DISABLE"]: logging.CRITICAL,
        debug_levels["SA_DEBUG_FATAL"]: logging.CRITICAL,
        debug_levels["SA_DEBUG_ERROR"]: logging.ERROR,
        debug_levels["SA_DEBUG_WARNING"]: logging.WARNING,
        debug_levels["SA_DEBUG_INFO"]: logging.INFO,
        debug_levels["SA_DEBUG_LOW"]: logging.DEBUG,
        debug_levels["SA_DEBUG_MEDIUM"]: logging.DEBUG,
        debug_levels["SA_DEBUG_HIGH"]: logging.DEBUG,
    }

    @classmethod
    def default_level(cls):
        """Returns integer representation of default debugging level"""
        return cls.debug_levels["SA_DEBUG_WARNING"]

    @classmethod
    def is_valid_level(cls, level):
        """Returns True if the provided level is a valid integer representation of a selfaffine level,
        False otherwise."""
        try:
            level = int(level)
            return bool(level in list(cls.debug_levels.values()))
        except (ValueError, TypeError):
            return False


def _create_stream_handler():
    """Creates stream handler reporting to stderr."""
    sh = logging.StreamHandler()
    fm = logging.Formatter(
        "%(asctime)s [ %(name)s %(levelname)-8s p#%(process)d.%(thread)d] %(message)s"
    )
    sh.setFormatter(fm)
    return sh


_stream_handler = _create_stream_handler()
_null_handler = logging.NullHandler()


def _get_logger():
    """Creates the package logger.
    By default the level is SelfAffineLoggingLevel.default_level(). SELFAFFINE_DEBUG_LEVEL
    overrides it when it holds a valid level; invalid values are reported and ignored.
    """
    _logger = logging.getLogger("selfaffine")

    log_level = SelfAffineLoggingLevel.default_level()
    envv_val = os.getenv(ENV_DEBUG_LEVEL, None)
    if envv_val is not None:
        if not SelfAffineLoggingLevel.is_valid_level(envv_val):
            _logger.warning(
                "Misconfigured %s ignored. Defaulted to debug_level %s",
                ENV_DEBUG_LEVEL,
                log_level,
            )
        else:
            log_level = int(envv_val)

    _logger.setLevel(SelfAffineLoggingLevel.logging_map[log_level])

    if log_level != SelfAffineLoggingLevel.debug_levels["SA_DEBUG_DISABLE"]:
        _logger.addHandler(_stream_handler)
    else:
        _logger.propagate = False
        _logger.addHandler(_null_handler)

    return _logger


logger = _get_logger()


def disable_logger(disable=True):
    """Disables all logging messages from the `selfaffine` package when disable is True.
    To restore logging, set disable as False.
    """
    if disable:
        logger.addHandler(_null_handler)
        logger.removeHandler(_stream_handler)
        logger.propagate = False
    else:
        logger.addHandler(_stream_handler)
        logger.removeHandler(_null_handler)
        logger.propagate = True


def set_sa_log_level(level):
    """Set the package logger to one of the integer levels in SelfAffineLoggingLevel.debug_levels.
    An invalid level leaves the logger untouched and emits a warning.
    """
    if SelfAffineLoggingLevel.is_valid_level(level):
        level = int(level)
        logger.setLevel(SelfAffineLoggingLevel.logging_map[level])
        if level == SelfAffineLoggingLevel.debug_levels["SA_DEBUG_DISABLE"]:
            disable_logger()
    else:
        logger.warning(
            "set_sa_log_level: Ignore attempt to set selfaffine logger to invalid logging level."
        )
