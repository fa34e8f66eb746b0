# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Exception hierarchy. Every error carries a stable code and the CLI exit code it maps to."""

from typing import Optional

from selfaffine.sa_codes import SelfAffineErrorCode, SelfAffineExitCode


class SelfAffineError(Exception):
    """Base class of all selfaffine errors"""

    error_code = SelfAffineErrorCode.SA_ERROR_DOMAIN
    exit_code = SelfAffineExitCode.SA_EXIT_DOMAIN

    @property
    def code(self) -> str:
        return self.error_code[0]

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class DomainError(SelfAffineError, ValueError):
    """Input outside the mathematical domain of an operation"""


class PreconditionError(DomainError):
    error_code = SelfAffineErrorCode.SA_ERROR_PRECONDITION


class RegimeError(DomainError):
    """Parameter outside the regime an operation is defined for"""

    error_code = SelfAffineErrorCode.SA_ERROR_REGIME


class ParseError(DomainError):
    error_code = SelfAffineErrorCode.SA_ERROR_PARSE

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position

    def to_dict(self) -> dict:
        payload = super().to_dict()
        payload["position"] = self.position
        return payload


class ResourceError(SelfAffineError):
    error_code = SelfAffineErrorCode.SA_ERROR_RESOURCE
    exit_code = SelfAffineExitCode.SA_EXIT_RESOURCE


class NumericsError(SelfAffineError, ArithmeticError):
    """Invalid bracket or a sign that stayed uncertified within the term budget"""

    error_code = SelfAffineErrorCode.SA_ERROR_NUMERICS


class UsageError(SelfAffineError):
    """Malformed command line"""

    error_code = SelfAffineErrorCode.SA_ERROR_USAGE
    exit_code = SelfAffineExitCode.SA_EXIT_USAGE
