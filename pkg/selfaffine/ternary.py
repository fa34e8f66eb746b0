# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Canonical ternary expansions of rationals and their digit statistics.

A rational x in [0,1] has an eventually periodic ternary expansion, stored as a
preperiod word and a primitive period word. When x has two expansions the one
ending in all 0s is stored (period "0"); x = 1 is the only point stored with the
all-2 tail. Digits are 1-based: digit(1) is the first digit after the point.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Iterator, List, Tuple, Union

from selfaffine.numerics import RationalLike, to_fraction
from selfaffine.sa_constants import (
    INTL_SA_ONE_PERIOD,
    INTL_SA_TERMINATING_PERIOD,
    INTL_SA_TERNARY_DIGITS,
)
from selfaffine.sa_errors import DomainError, ParseError

logger = logging.getLogger(__name__)

INFINITY = math.inf
Count = Union[int, float]


def _primitive_root(period: str) -> str:
    size = len(period)
    for d in range(1, size):
        if size % d == 0 and period[:d] * (size // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """Infinite word u v v v ... over a finite alphabet, kept normalized:
    v is primitive and the last letter of u differs from the last letter of v.
    """

    preperiod: str
    period: str

    ALPHABET: ClassVar[str] = INTL_SA_TERNARY_DIGITS

    def __post_init__(self):
        preperiod, period = self._normalize(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", preperiod)
        object.__setattr__(self, "period", period)

    @classmethod
    def _normalize(cls, preperiod: str, period: str) -> Tuple[str, str]:
        for pos, letter in enumerate(preperiod + period):
            if letter not in cls.ALPHABET:
                raise ParseError(
                    f"digit {letter!r} not in alphabet {cls.ALPHABET}", pos
                )
        if not period:
            raise ParseError("period must be nonempty")
        period = _primitive_root(period)
        while preperiod and preperiod[-1] == period[-1]:
            period = period[-1] + period[:-1]
            preperiod = preperiod[:-1]
        return preperiod, period

    @property
    def m(self) -> int:
        """Period length."""
        return len(self.period)

    def digit(self, k: int) -> str:
        """k-th letter, 1-based."""
        if k < 1:
            raise IndexError("digits are 1-based")
        if k <= len(self.preperiod):
            return self.preperiod[k - 1]
        return self.period[(k - len(self.preperiod) - 1) % self.m]

    def digits(self, n: int) -> str:
        """First n letters."""
        head = self.preperiod[:n]
        rest = n - len(head)
        if rest <= 0:
            return head
        reps = -(-rest // self.m)
        return head + (self.period * reps)[:rest]

    def iter_digits(self) -> Iterator[str]:
        yield from self.preperiod
        while True:
            yield from self.period

    def shift(self, k: int = 1) -> "EventuallyPeriodicWord":
        """sigma^k: drop the first k letters."""
        if k <= len(self.preperiod):
            return type(self)(self.preperiod[k:], self.period)
        offset = (k - len(self.preperiod)) % self.m
        return type(self)("", self.period[offset:] + self.period[:offset])

    def shifts(self) -> List["EventuallyPeriodicWord"]:
        """The finite shift orbit sigma^k, k = 0 .. len(preperiod) + m - 1."""
        return [self.shift(k) for k in range(len(self.preperiod) + self.m)]

    def rotations(self) -> List[str]:
        return [self.period[i:] + self.period[:i] for i in range(self.m)]

    def compare(self, other: "EventuallyPeriodicWord") -> int:
        """Lexicographic comparison of the infinite words: -1, 0 or 1.

        Two eventually periodic words that agree on their first
        max(preperiod) + lcm(periods) letters agree everywhere.
        """
        horizon = max(len(self.preperiod), len(other.preperiod)) + (
            self.m * other.m // math.gcd(self.m, other.m)
        )
        mine, theirs = self.digits(horizon), other.digits(horizon)
        if mine == theirs:
            return 0
        return -1 if mine < theirs else 1


@dataclass(frozen=True)
class EventuallyPeriodicTernary(EventuallyPeriodicWord):
    """Canonical ternary expansion of a rational in [0,1]."""

    ALPHABET: ClassVar[str] = INTL_SA_TERNARY_DIGITS

    @classmethod
    def _normalize(cls, preperiod: str, period: str) -> Tuple[str, str]:
        preperiod, period = super()._normalize(preperiod, period)
        if period == INTL_SA_ONE_PERIOD and preperiod:
            # 0.w d 222... equals 0.w (d+1) 000..., d != 2 after absorption
            bumped = preperiod[:-1] + str(int(preperiod[-1]) + 1)
            preperiod, period = super()._normalize(
                bumped, INTL_SA_TERMINATING_PERIOD
            )
        return preperiod, period

    def value(self) -> Fraction:
        head = int(self.preperiod, 3) if self.preperiod else 0
        scale = Fraction(1, 3 ** len(self.preperiod))
        tail = Fraction(int(self.period, 3), 3**self.m - 1)
        return (head + tail) * scale

    def is_triadic(self) -> bool:
        return self.period == INTL_SA_TERMINATING_PERIOD or (
            self.preperiod == "" and self.period == INTL_SA_ONE_PERIOD
        )

    def is_one(self) -> bool:
        return self.preperiod == "" and self.period == INTL_SA_ONE_PERIOD

    def ones_in_period(self) -> int:
        return self.period.count("1")

    def complement(self) -> "EventuallyPeriodicTernary":
        """Expansion of 1 - x."""
        if self.is_triadic():
            return expand(1 - self.value())
        swap = str.maketrans("02", "20")
        return EventuallyPeriodicTernary(
            self.preperiod.translate(swap), self.period.translate(swap)
        )

    def __str__(self) -> str:
        return format_digits(self)


def expand(x: RationalLike) -> EventuallyPeriodicTernary:
    """Canonical expansion of a rational x in [0,1] by base-3 long division.

    :param x: rational in [0,1], given as Fraction, int or an exact string ("p/q" or decimal)
    :return: normalized EventuallyPeriodicTernary whose value() equals x
    """
    x = to_fraction(x, "x")
    if not 0 <= x <= 1:
        raise DomainError(f"x = {x} outside [0,1]")
    if x == 1:
        return EventuallyPeriodicTernary("", INTL_SA_ONE_PERIOD)
    numerator, denominator = x.numerator, x.denominator
    seen = {}
    out: List[str] = []
    remainder = numerator
    while remainder not in seen:
        seen[remainder] = len(out)
        remainder *= 3
        out.append(str(remainder // denominator))
        remainder %= denominator
    start = seen[remainder]
    return EventuallyPeriodicTernary("".join(out[:start]), "".join(out[start:]))


def ones_count_prefix(t: EventuallyPeriodicTernary, n: int) -> int:
    """i(n): number of 1s among the first n digits."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    pre = len(t.preperiod)
    if n <= pre:
        return t.preperiod[:n].count("1")
    full, partial = divmod(n - pre, t.m)
    return (
        t.preperiod.count("1")
        + full * t.ones_in_period()
        + t.period[:partial].count("1")
    )


def total_ones(t: EventuallyPeriodicTernary) -> Count:
    """N_1(x): infinite iff the period holds a 1."""
    if "1" in t.period:
        return INFINITY
    return t.preperiod.count("1")


def run_length(t: EventuallyPeriodicTernary, n: int, d: Union[int, str]) -> Count:
    """r_n(d): run length of digit d starting at digit n + 1."""
    d = str(d)
    if d not in INTL_SA_TERNARY_DIGITS or n < 0:
        raise DomainError(f"run_length needs n >= 0 and a ternary digit, got {n}, {d}")
    constant_tail = set(t.period) == {d}
    count = 0
    k = n + 1
    while True:
        if k > len(t.preperiod) and constant_tail:
            return INFINITY
        if t.digit(k) != d:
            return count
        count += 1
        k += 1


def digit_one_frequency(t: EventuallyPeriodicTernary) -> Fraction:
    """Limit of i(n)/n, read off the period."""
    return Fraction(t.ones_in_period(), t.m)


def in_cantor(t: EventuallyPeriodicTernary) -> bool:
    """True iff x has a ternary expansion avoiding the digit 1.

    The stored expansion is tested directly; a triadic x = 0.w1 with w 1-free also
    belongs, through its second expansion 0.w0222...
    """
    digits = t.preperiod + t.period
    if "1" not in digits:
        return True
    return (
        t.period == INTL_SA_TERMINATING_PERIOD
        and t.preperiod.endswith("1")
        and "1" not in t.preperiod[:-1]
    )


def digit_positions(
    t: EventuallyPeriodicTernary, d: Union[int, str], count: int
) -> List[int]:
    """1-based positions of the first `count` occurrences of digit d."""
    d = str(d)
    if d not in t.preperiod + t.period:
        return []
    if d not in t.period:
        count = min(count, t.preperiod.count(d))
    positions: List[int] = []
    for k, letter in enumerate(t.iter_digits(), start=1):
        if len(positions) >= count:
            break
        if letter == d:
            positions.append(k)
    return positions


def parse_digits(s: str) -> EventuallyPeriodicTernary:
    """Parse ``"0.d1...dk(p1...pm)"``; ``"1"`` is the literal one.

    An unparenthesized string terminates, i.e. has period "0".
    """
    text = s.strip()
    if text == "1":
        return EventuallyPeriodicTernary("", INTL_SA_ONE_PERIOD)
    if not text.startswith("0."):
        raise ParseError(f"digit string must start with '0.': {s!r}", 0)
    preperiod: List[str] = []
    period: List[str] = []
    target = preperiod
    closed = False
    for pos in range(2, len(text)):
        ch = text[pos]
        if closed:
            raise ParseError("characters after ')'", pos)
        if ch in INTL_SA_TERNARY_DIGITS:
            target.append(ch)
        elif ch == "(" and target is preperiod:
            target = period
        elif ch == ")" and target is period:
            if not period:
                raise ParseError("empty period", pos)
            closed = True
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    if target is period and not closed:
        raise ParseError("unterminated period", len(text))
    return EventuallyPeriodicTernary(
        "".join(preperiod),
        "".join(period) if period else INTL_SA_TERMINATING_PERIOD,
    )


def format_digits(t: EventuallyPeriodicTernary) -> str:
    if t.is_one():
        return "1"
    if t.period == INTL_SA_TERMINATING_PERIOD:
        return "0." + (t.preperiod or "0")
    return f"0.{t.preperiod}({t.period})"


def to_expansion(x: Union[RationalLike, EventuallyPeriodicTernary]) -> EventuallyPeriodicTernary:
    """Accept an expansion, a digit string ("0.(02)") or a rational."""
    if isinstance(x, EventuallyPeriodicTernary):
        return x
    if isinstance(x, str) and (x.strip().startswith("0.") and "(" in x):
        return parse_digits(x)
    return expand(x)


def nested_block_digits(blocks: int) -> str:
    """Digits of 0.022(02)022(02)^2 ... 022(02)^blocks, an aperiodic point cut after `blocks` blocks."""
    if blocks < 1:
        raise DomainError("blocks must be positive")
    return "".join("022" + "02" * n for n in range(1, blocks + 1))
