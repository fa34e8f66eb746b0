# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.


class SelfAffineErrorCode:
    """Stable (code, message) pairs reported in the `code` field of CLI errors"""

    SA_ERROR_DOMAIN = ("domain_error", "Input outside the domain of the operation")
    SA_ERROR_PRECONDITION = (
        "precondition_error",
        "Operation precondition not met",
    )
    SA_ERROR_PARSE = ("parse_error", "Malformed digit string or rational")
    SA_ERROR_REGIME = ("regime_error", "Parameter outside the required regime")
    SA_ERROR_RESOURCE = ("resource_error", "Requested size exceeds the cap")
    SA_ERROR_NUMERICS = ("numerics_error", "Sign could not be certified")
    SA_ERROR_USAGE = ("usage_error", "Invalid command line")

    @classmethod
    def code_values(cls):
        code_pairs = [
            v for k, v in cls.__dict__.items() if not k.startswith("__")
        ]
        return {p[0]: p[1] for p in code_pairs if isinstance(p, tuple)}


class SelfAffineExitCode:
    """Process exit codes of the selfaffine CLI"""

    SA_EXIT_OK = 0
    SA_EXIT_USAGE = 2
    SA_EXIT_DOMAIN = 3
    SA_EXIT_RESOURCE = 4

    @classmethod
    def get_text_code(cls, num):
        """Returns the textual representation of the numerical exit code."""
        for exit_status, exit_code in cls.__dict__.items():
            if exit_code == num and exit_status.startswith("SA_EXIT_"):
                return exit_status
        return None
