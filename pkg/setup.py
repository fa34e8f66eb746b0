#!/usr/bin/env python

# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

# pylint: disable-msg=missing-module-docstring
import logging
import sys

from setuptools import setup

logger = logging.getLogger(__name__)


def python_version_supported():
    if sys.version_info[0] == 3 and sys.version_info[1] >= 8:
        return True
    return False


if not python_version_supported():
    logger.warning(
        "[SETUP] This package supports only Python 3.8 and above. "
        "Other python versions may not work as expected."
    )

setup()
