# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

INTL_SA_CONFIG_FILE_ENV = "SELFAFFINE_CONFIG_FILE"
INTL_SA_CONFIG_FILE_DEFAULT = "./selfaffine-config.json"
INTL_SA_ENV_PREFIX = "selfaffine_"
INTL_SA_TELEMETRY_EXPORTERS = ["none", "console"]
INTL_SA_TRACER_NAME = "selfaffine.cli"
INTL_SA_METER_NAME = "selfaffine.cli"
INTL_SA_SPAN_PREFIX = "selfaffine."
INTL_SA_TERNARY_DIGITS = "012"
INTL_SA_BINARY_DIGITS = "01"
# x = 1 is the only expansion stored with an all-2 tail
INTL_SA_ONE_PERIOD = "2"
INTL_SA_TERMINATING_PERIOD = "0"
INTL_SA_CSV_HEADER_GRAPH = ["x", "y"]
INTL_SA_CSV_HEADER_SWEEP = ["a", "value"]
INTL_SA_CSV_HEADER_EVAL = ["a", "x", "value"]
INTL_SA_SUBCOMMANDS = [
    "eval",
    "graph",
    "classify",
    "critical",
    "constants",
    "dim",
    "beta",
]
