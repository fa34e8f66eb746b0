# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

import json
import logging
import os
from functools import reduce
from typing import Any

from selfaffine import sa_logging
from selfaffine.sa_constants import (
    INTL_SA_CONFIG_FILE_DEFAULT,
    INTL_SA_CONFIG_FILE_ENV,
    INTL_SA_ENV_PREFIX,
    INTL_SA_TELEMETRY_EXPORTERS,
)

logger = logging.getLogger(__name__)


class SelfAffineConfig:
    """selfaffine Configuration Class
    The precedence: in-code keyword arguments > Environment Variables > config file > default values.
    Values are validated per key; an invalid value is logged and the previous value is kept.
    """

    _CONFIG_FILE_DEFAULT = INTL_SA_CONFIG_FILE_DEFAULT
    _DELIMITER = "."
    _SA_PREFIX = INTL_SA_ENV_PREFIX

    # inclusive bounds of the integer options
    _INT_RANGES = {
        "graph_depth_cap": (0, 14),
        "entropy_depth_cap": (1, 60),
        "entropy_depth": (1, 60),
        "entropy_lookahead": (0, 256),
        "greedy_depth": (1, 100000),
        "approx_dps": (15, 2000),
        "series_max_terms": (64, 1 << 22),
        "sweep_workers": (1, 64),
    }

    # open-closed bounds (0, hi] of the tolerance options
    _TOL_RANGES = {
        "eps": 1e-3,
        "bisect_tol": 1e-2,
    }

    def __init__(self, **kwargs: Any) -> None:
        self.__config = {
            "eps": 1e-12,
            "bisect_tol": 1e-12,
            "graph_depth_cap": 12,
            "entropy_depth_cap": 40,
            "entropy_depth": 30,
            "entropy_lookahead": 64,
            "greedy_depth": 256,
            "approx_dps": 30,
            "series_max_terms": 1 << 16,
            "sweep_workers": 4,
            "telemetry_exporter": "none",
            "debug_level": sa_logging.SelfAffineLoggingLevel.default_level(),
        }
        self.update_with_cnf_file()
        self.update_with_env_var()
        self.update_with_kwargs(kwargs)

        if self.__config["entropy_depth"] > self.__config["entropy_depth_cap"]:
            logger.warning(
                "entropy_depth %s above entropy_depth_cap %s; using the cap",
                self.__config["entropy_depth"],
                self.__config["entropy_depth_cap"],
            )
            self.__config["entropy_depth"] = self.__config["entropy_depth_cap"]

        logger.debug("Set SelfAffineConfig as: %s", self)

    def __str__(self) -> str:
        return f"{self.__config}"

    def __getitem__(self, key: str) -> Any:
        return self.__config[key]

    def keys(self):
        return self.__config.keys()

    def get(self, key: str, default: Any = None):
        """Get the value of key. Nested keys separated by a dot are also accepted."""
        key = key.split(self._DELIMITER)
        value = reduce(
            lambda d, k: d.get(k, None) if isinstance(d, dict) else None,
            key,
            self.__config,
        )
        return value if value is not None else default

    def get_cnf_dict(self) -> Any:
        """Load Python dict from config file (json), if any"""
        cnf_filepath = os.environ.get(INTL_SA_CONFIG_FILE_ENV)
        cnf_dict = None

        if not cnf_filepath:
            cnf_filepath = self._CONFIG_FILE_DEFAULT
            if not os.path.isfile(cnf_filepath):
                logger.debug("No config file at %s; skipping", cnf_filepath)
                return cnf_dict

        try:
            with open(cnf_filepath, encoding="utf-8") as cnf_file:
                try:
                    file_content = cnf_file.read()
                    cnf_dict = json.loads(file_content)
                except ValueError as ex:
                    logger.error(
                        "Invalid config file, must be valid json. Ignoring: %s",
                        ex,
                    )
        except FileNotFoundError as ex:
            logger.error("Invalid config file path. Ignoring: %s", ex)
        if cnf_dict is not None and not isinstance(cnf_dict, dict):
            logger.error("Config file must hold a json object. Ignoring.")
            cnf_dict = None
        return cnf_dict

    def update_with_cnf_file(self) -> None:
        """Update the settings with the config file (json), if any."""

        def _snake_to_camel_case(key):
            key_parts = key.split("_")
            camel_head = key_parts[0]
            camel_body = "".join(part.title() for part in key_parts[1:])
            return f"{camel_head}{camel_body}"

        cnf_dict = self.get_cnf_dict()
        if not cnf_dict:
            return

        for key in set(self.__config.keys()):
            # snake_case config keys are camelCase in the JSON file
            val = cnf_dict.get(_snake_to_camel_case(key))
            if val is not None:
                self._set_config_value(key, val)

    def update_with_env_var(self) -> None:
        """Update the settings with environment variables."""
        for key in set(self.__config.keys()):
            env = (self._SA_PREFIX + key).upper()
            val = os.environ.get(env)
            if val is not None:
                self._set_config_value(key, val)

    def update_with_kwargs(self, kwargs: dict) -> None:
        """Update the configuration settings with (in-code) keyword arguments"""
        for key, val in kwargs.items():
            if key not in self.__config:
                logger.warning("Unsupported selfaffine config key: %s", key)
                continue
            if val is not None:
                self._set_config_value(key, val)

    def _set_config_value(self, keys_str: str, val: Any) -> Any:
        """Sets the value of the config option 'keys_str' to 'val' after validation"""
        key = keys_str
        try:
            if key in self._INT_RANGES:
                if isinstance(val, bool):
                    raise ValueError
                int_val = int(val)
                low, high = self._INT_RANGES[key]
                if not low <= int_val <= high:
                    raise ValueError
                self.__config[key] = int_val
            elif key in self._TOL_RANGES:
                tol = float(val)
                if not 0 < tol <= self._TOL_RANGES[key]:
                    raise ValueError
                self.__config[key] = tol
            elif key == "telemetry_exporter":
                if (
                    not isinstance(val, str)
                    or val.lower() not in INTL_SA_TELEMETRY_EXPORTERS
                ):
                    raise ValueError
                self.__config[key] = val.lower()
            elif key == "debug_level":
                val = int(val)
                if not sa_logging.SelfAffineLoggingLevel.is_valid_level(val):
                    raise ValueError
                self.__config[key] = val
                # update logging level of package logger
                sa_logging.set_sa_log_level(val)
            else:
                logger.warning("Unsupported selfaffine config key: %s", key)
        except (ValueError, TypeError):
            logger.warning(
                "Ignore config option with invalid (non-convertible or out-of-range) type: %s",
                key,
            )
