# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Binary beta-expansions with base beta = 1/lambda, 1 < beta < 2.

Sequences are elements of {0,1}^N, Pi_lambda(w) = sum_n w_n lambda^n. The set U_lambda
of sequences w with Pi_lambda(sigma^k w) < 1 and Pi_lambda(sigma^k w_bar) < 1 for all
k >= 0 coincides with the set described by lexicographic comparison against the
quasi-greedy expansion d of 1.
"""

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Dict, List, Optional, Tuple, Union

from mpmath import mpf

from selfaffine.numerics import (
    DEFAULT_TOL,
    Constant,
    RationalLike,
    a_hat_polynomial,
    root_constant,
    thue_morse_digit,
    to_fraction,
)
from selfaffine.okamoto import Param, as_param
from selfaffine.sa_constants import INTL_SA_BINARY_DIGITS, INTL_SA_TERMINATING_PERIOD
from selfaffine.sa_errors import DomainError, ParseError, RegimeError, ResourceError
from selfaffine.ternary import EventuallyPeriodicTernary, EventuallyPeriodicWord

logger = logging.getLogger(__name__)

DEFAULT_GREEDY_DEPTH = 256
MAX_TAIL_LEVEL = 12

_HALF = Fraction(1, 2)
_REFLECT = str.maketrans("01", "10")


@dataclass(frozen=True)
class BinaryEPSeq(EventuallyPeriodicWord):
    """Eventually periodic sequence over {0,1}. An empty period pads with 0s."""

    ALPHABET: ClassVar[str] = INTL_SA_BINARY_DIGITS

    @classmethod
    def _normalize(cls, preperiod: str, period: str) -> Tuple[str, str]:
        return super()._normalize(preperiod, period or INTL_SA_TERMINATING_PERIOD)

    def reflect(self) -> "BinaryEPSeq":
        """w_bar: every digit flipped."""
        return BinaryEPSeq(
            self.preperiod.translate(_REFLECT), self.period.translate(_REFLECT)
        )

    def to_ternary(self) -> EventuallyPeriodicTernary:
        """The point of the Cantor set obtained by writing 2 for every 1."""
        swap = str.maketrans("1", "2")
        return EventuallyPeriodicTernary(
            self.preperiod.translate(swap), self.period.translate(swap)
        )

    def __str__(self) -> str:
        return format_binary(self)


def parse_binary(s: str) -> BinaryEPSeq:
    """Parse ``"w1...wk(p1...pm)"`` over {0,1}; no parentheses means a 0 tail."""
    text = s.strip()
    head, sep, rest = text.partition("(")
    for pos, ch in enumerate(head):
        if ch not in INTL_SA_BINARY_DIGITS:
            raise ParseError(f"unexpected character {ch!r}", pos)
    if not sep:
        return BinaryEPSeq(head, "")
    if not rest.endswith(")"):
        raise ParseError("unterminated period", len(text))
    period = rest[:-1]
    if not period:
        raise ParseError("empty period", len(head) + 1)
    for pos, ch in enumerate(period, start=len(head) + 1):
        if ch not in INTL_SA_BINARY_DIGITS:
            raise ParseError(f"unexpected character {ch!r}", pos)
    return BinaryEPSeq(head, period)


def format_binary(w: BinaryEPSeq) -> str:
    return f"{w.preperiod}({w.period})"


Ring = Union[Fraction, mpf]


def _as_ring(lam) -> Ring:
    if isinstance(lam, Param):
        return lam.a
    if isinstance(lam, mpf):
        return lam
    return to_fraction(lam, "lambda")


def pi_lambda(lam: Union[Param, RationalLike, mpf], w: BinaryEPSeq) -> Ring:
    """Pi_lambda(w) = sum_n w_n lambda^n, the periodic tail summed as a geometric series.

    Exact for rational lambda; any other ring element (an mpf) is used as is.
    """
    lam = _as_ring(lam)
    if not 0 < lam < 1:
        raise DomainError("lambda must lie in (0,1)")
    head = 0 * lam
    power = lam
    for digit in w.preperiod:
        if digit == "1":
            head += power
        power *= lam
    cycle = 0 * lam
    step = lam
    for digit in w.period:
        if digit == "1":
            cycle += step
        step *= lam
    # power = lambda^(|u|+1), step = lambda^(m+1)
    return head + power / lam * cycle / (1 - step / lam)


@dataclass(frozen=True)
class BetaExpansion:
    """Binary digits of a number in base 1/lam.

    exact is True when the digits were identified as an eventually periodic word;
    otherwise `digits` holds the first `depth` digits followed by 0s.
    """

    digits: BinaryEPSeq
    lam: Union[Fraction, Constant]
    exact: bool
    depth: int

    @property
    def prefix(self) -> str:
        return self.digits.digits(self.depth)

    def as_dict(self) -> dict:
        lam = self.lam.as_dict() if isinstance(self.lam, Constant) else str(self.lam)
        return {
            "lambda": lam,
            "digits": str(self.digits) if self.exact else self.prefix,
            "exact": self.exact,
            "depth": self.depth,
        }


@dataclass(frozen=True)
class QuasiGreedyExpansion(BetaExpansion):
    """Quasi-greedy expansion d of 1, plus the greedy digits it was derived from."""

    greedy: str = ""
    greedy_terminates: bool = False

    @property
    def beta(self) -> Union[Fraction, None]:
        return 1 / self.lam if isinstance(self.lam, Fraction) else None

    def as_dict(self) -> dict:
        payload = super().as_dict()
        payload["greedy"] = self.greedy
        payload["greedy_terminates"] = self.greedy_terminates
        if self.beta is not None:
            payload["beta"] = str(self.beta)
        return payload


def _digit_orbit(
    lam: Fraction, x: Fraction, depth: int, strict: bool
) -> Tuple[str, Optional[int], bool]:
    """Greedy digits of x in base 1/lam.

    :return: (digits, cycle start or None, terminated). strict=True only takes a 1 when
        the remainder stays positive, which yields the quasi-greedy expansion of 1.
    """
    beta = 1 / lam
    remainder = x
    seen: Dict[Fraction, int] = {}
    out: List[str] = []
    while len(out) < depth:
        if remainder == 0:
            return "".join(out), None, True
        if remainder in seen:
            return "".join(out), seen[remainder], False
        seen[remainder] = len(out)
        scaled = remainder * beta
        take = scaled > 1 if strict else scaled >= 1
        out.append("1" if take else "0")
        remainder = scaled - 1 if take else scaled
    return "".join(out), None, False


def greedy_expansion_of_one(
    a: Union[Param, RationalLike], depth: int = DEFAULT_GREEDY_DEPTH
) -> QuasiGreedyExpansion:
    """Greedy and quasi-greedy beta-expansions of 1 for beta = 1/a, 1/2 < a < 1.

    The quasi-greedy digits come from the strict recursion, which equals the greedy one
    with a terminating tail 1 0^inf rewritten to (d_1...d_{n-1} 0)^inf.
    """
    param = as_param(a)
    lam = param.a
    if not _HALF < lam < 1:
        raise DomainError(f"greedy expansion of 1 needs 1/2 < a < 1, got {lam}")
    if depth < 1:
        raise DomainError("depth must be positive")
    greedy, _, terminates = _digit_orbit(lam, Fraction(1), depth, strict=False)
    digits, cycle, _ = _digit_orbit(lam, Fraction(1), depth, strict=True)
    if cycle is not None:
        word, exact = BinaryEPSeq(digits[:cycle], digits[cycle:]), True
    elif terminates:
        word, exact = BinaryEPSeq("", greedy[:-1] + "0"), True
    else:
        word, exact = BinaryEPSeq(digits, ""), False
        logger.debug("quasi-greedy expansion of 1 at %s truncated at depth %d", lam, depth)
    return QuasiGreedyExpansion(
        word, lam, exact, depth, greedy=greedy, greedy_terminates=terminates
    )


def quasi_greedy_digits(a: Union[Param, RationalLike], n: int) -> str:
    """First n quasi-greedy digits of 1, exact."""
    return greedy_expansion_of_one(a, max(n, 1)).prefix[:n]


def quasi_greedy_multinacci(k: int) -> QuasiGreedyExpansion:
    """(1^(k-1) 0)^inf, the quasi-greedy expansion of 1 at the multinacci number a_k."""
    if k < 2:
        raise DomainError("multinacci quasi-greedy expansion needs k >= 2")
    word = BinaryEPSeq("", "1" * (k - 1) + "0")
    return QuasiGreedyExpansion(
        word,
        multinacci(k),
        True,
        k,
        greedy="1" * k,
        greedy_terminates=True,
    )


def greedy_expansion(
    lam: Union[Param, RationalLike], x: RationalLike, depth: int = DEFAULT_GREEDY_DEPTH
) -> BetaExpansion:
    """Greedy expansion of x in [0, lam/(1-lam)]: takes a 1 whenever possible."""
    lam = as_param(lam).a
    x = to_fraction(x, "x")
    if not 0 <= x <= lam / (1 - lam):
        raise DomainError(f"x = {x} has no expansion in base {1 / lam}")
    digits, cycle, terminates = _digit_orbit(lam, x, depth, strict=False)
    if cycle is not None:
        return BetaExpansion(BinaryEPSeq(digits[:cycle], digits[cycle:]), lam, True, depth)
    return BetaExpansion(BinaryEPSeq(digits, ""), lam, terminates, depth)


def lazy_expansion(
    lam: Union[Param, RationalLike], x: RationalLike, depth: int = DEFAULT_GREEDY_DEPTH
) -> BetaExpansion:
    """Lazy expansion of x: the reflection of the greedy expansion of lam/(1-lam) - x."""
    lam = as_param(lam).a
    x = to_fraction(x, "x")
    mirror = greedy_expansion(lam, lam / (1 - lam) - x, depth)
    if mirror.exact:
        return BetaExpansion(mirror.digits.reflect(), lam, True, depth)
    return BetaExpansion(
        BinaryEPSeq(mirror.prefix.translate(_REFLECT), "1"), lam, False, depth
    )


class UniqueVerdict(enum.Enum):
    IN_U = "InU"
    NOT_IN_U = "NotInU"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class UniqueExpansionResult:
    verdict: UniqueVerdict
    method: str
    depth: Optional[int] = None
    witness: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "method": self.method,
            "depth": self.depth,
            "witness": self.witness,
        }


def _orbit(w: BinaryEPSeq) -> List[BinaryEPSeq]:
    return w.shifts() + w.reflect().shifts()


def is_unique_expansion(
    lam: Union[Param, RationalLike],
    w: BinaryEPSeq,
    method: str = "value",
    depth: int = DEFAULT_GREEDY_DEPTH,
) -> UniqueExpansionResult:
    """Membership of w in U_lambda.

    method "value" checks Pi_lambda(s) < 1 over the finite shift orbit of w and of its
    reflection, exactly. Method "lexicographic" compares the same orbit against the
    first `depth` digits of the quasi-greedy expansion of 1 and may end Undetermined.
    """
    lam = as_param(lam).a
    if not _HALF < lam < 1:
        raise DomainError(f"unique expansions need 1/2 < lambda < 1, got {lam}")
    if method == "value":
        for s in _orbit(w):
            if pi_lambda(lam, s) >= 1:
                return UniqueExpansionResult(UniqueVerdict.NOT_IN_U, method, witness=str(s))
        return UniqueExpansionResult(UniqueVerdict.IN_U, method)
    if method != "lexicographic":
        raise DomainError(f"unknown method {method}")
    d = greedy_expansion_of_one(lam, depth)
    undecided = None
    for s in _orbit(w):
        if d.exact:
            cmp = s.compare(d.digits)
        else:
            mine, theirs = s.digits(depth), d.prefix
            cmp = (mine > theirs) - (mine < theirs)
            if cmp == 0:
                undecided = str(s)
                continue
        if cmp >= 0:
            return UniqueExpansionResult(
                UniqueVerdict.NOT_IN_U, method, depth, witness=str(s)
            )
    if undecided is not None:
        return UniqueExpansionResult(
            UniqueVerdict.UNDETERMINED, method, depth, witness=undecided
        )
    return UniqueExpansionResult(UniqueVerdict.IN_U, method, depth)


def thue_morse(n: int) -> str:
    """t_0 ... t_{n-1}."""
    if n < 1:
        raise DomainError("n must be positive")
    return "".join(str(thue_morse_digit(j)) for j in range(n))


def komornik_loreti(tol: RationalLike = DEFAULT_TOL) -> Constant:
    """Bracket of a_hat, the root of sum_{j>=1} t_j a^j = 1."""
    return root_constant("a_hat", to_fraction(tol, "tol"))


def a_hat_n(n: int, tol: RationalLike = DEFAULT_TOL) -> Constant:
    """Root in (1/2,1) of the truncation sum_{j<=2^n} t_j a^j = 1; a_hat_1 is rho."""
    if n < 1:
        raise DomainError("n must be positive")
    return root_constant(f"a_hat_{n}", to_fraction(tol, "tol"))


def multinacci(k: int, tol: RationalLike = DEFAULT_TOL) -> Constant:
    """a_k, the root in (1/2,1] of a + ... + a^k = 1."""
    if k < 1:
        raise DomainError("k must be positive")
    return root_constant(f"multinacci_{k}", to_fraction(tol, "tol"))


@dataclass(frozen=True)
class CountableRegimeTails:
    a: Fraction
    level: int
    tails: List[BinaryEPSeq] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "a": str(self.a),
            "level": self.level,
            "tails": [str(t) for t in self.tails],
            "ternary_tails": [str(t.to_ternary()) for t in self.tails],
        }


def countable_regime_tails(a: Union[Param, RationalLike]) -> CountableRegimeTails:
    """Periodic tails (v_m v_m_bar)^inf, m < n, of U_a when a_hat < a < rho.

    v_m = t_1 ... t_{2^m} and n is fixed by a in [a_hat_{n+1}, a_hat_n). The truncated
    Thue-Morse polynomials increase in a, so the level is found by exact sign tests.
    """
    param = as_param(a)
    lam = param.a
    if lam + lam * lam >= 1:
        raise RegimeError(f"a = {lam} is not below rho")
    if komornik_loreti().compare(lam) != -1:
        raise RegimeError(f"a = {lam} is not certainly above a_hat")
    level = 1
    while a_hat_polynomial(level + 1).sign(lam) < 0:
        level += 1
        if level > MAX_TAIL_LEVEL:
            raise ResourceError(f"a = {lam} too close to a_hat for tail enumeration")
    tails = []
    for m in range(level):
        v = "".join(str(thue_morse_digit(j)) for j in range(1, 2**m + 1))
        tails.append(BinaryEPSeq("", v + v.translate(_REFLECT)))
    logger.debug("countable regime at a = %s has level %d", lam, level)
    return CountableRegimeTails(lam, level, tails)


def run_limited_count(k: int, n: int) -> int:
    """Number of words in {0,1}^n containing neither 1^k nor 0^k."""
    if k < 1 or n < 0:
        raise DomainError("run_limited_count needs k >= 1 and n >= 0")
    if n == 0:
        return 1
    if k == 1:
        return 0
    # ending[r] counts words whose last run has length r + 1, per symbol
    ending = [2] + [0] * (k - 2)
    for _ in range(n - 1):
        ending = [sum(ending)] + ending[:-1]
    return sum(ending)
