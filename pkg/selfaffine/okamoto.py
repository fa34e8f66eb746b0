# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""The approximants f_n and the self-affine limit F_a.

f_0 is the identity on [0,1]. f_{n+1} agrees with f_n at the points k/3^n and on each
interval [k/3^n, (k+1)/3^n] replaces the segment from y0 to y1 by three segments
through y0 + a(y1-y0) and y0 + (1-a)(y1-y0). On the three thirds of [0,1] the graph of
F_a is the affine image of the whole graph with vertical factors a, 1-2a and a.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from mpmath import mp, mpf

from selfaffine.numerics import RationalLike, to_fraction
from selfaffine.sa_constants import INTL_SA_CSV_HEADER_GRAPH
from selfaffine.sa_errors import DomainError, ResourceError
from selfaffine.ternary import (
    EventuallyPeriodicTernary,
    in_cantor,
    ones_count_prefix,
    to_expansion,
)

logger = logging.getLogger(__name__)

DEFAULT_EPS = Fraction(1, 10**12)
DEFAULT_GRAPH_DEPTH_CAP = 12
DEFAULT_APPROX_DPS = 30
DEFAULT_SERIES_MAX_TERMS = 1 << 16

Point = Union[RationalLike, EventuallyPeriodicTernary]


@dataclass(frozen=True)
class Param:
    """The parameter a in (0,1).

    eps is only used when a stands for an inexact quantity (exact=False): threshold
    comparisons closer than eps are then reported as Boundary/Unknown.
    """

    a: Fraction
    eps: Fraction = DEFAULT_EPS
    exact: bool = True

    def __post_init__(self):
        a = to_fraction(self.a, "a")
        eps = to_fraction(self.eps, "eps")
        if not 0 < a < 1:
            raise DomainError(f"parameter a = {a} outside (0,1)")
        if eps <= 0:
            raise DomainError("eps must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "eps", eps)

    @classmethod
    def approximate(cls, value: float, eps: RationalLike = DEFAULT_EPS) -> "Param":
        """A parameter known only approximately, e.g. read from a float."""
        return cls(Fraction(value), eps, exact=False)

    @property
    def b(self) -> Fraction:
        """The middle factor 1 - 2a."""
        return 1 - 2 * self.a

    def weight(self, digit: str) -> Fraction:
        """Vertical scale of the affine copy over digit's third."""
        return self.b if digit == "1" else self.a

    def offset(self, digit: str) -> Fraction:
        """q(digit): height of the affine copy's lower corner."""
        if digit == "0":
            return Fraction(0)
        if digit == "1":
            return self.a
        return 1 - self.a

    def contraction(self) -> Fraction:
        """max(a, |1-2a|), the uniform convergence rate of f_n."""
        return max(self.a, abs(self.b))


def as_param(a: Union[Param, RationalLike]) -> Param:
    return a if isinstance(a, Param) else Param(to_fraction(a, "a"))


def fn_eval(a: Union[Param, RationalLike], n: int, x: RationalLike) -> Fraction:
    """Exact value of the n-th approximant f_n at a rational x in [0,1]."""
    param = as_param(a)
    y = to_fraction(x, "x")
    if not 0 <= y <= 1:
        raise DomainError(f"x = {y} outside [0,1]")
    if n < 0:
        raise DomainError("n must be nonnegative")
    offset, scale = Fraction(0), Fraction(1)
    for _ in range(n):
        k = min(int(3 * y), 2)
        digit = str(k)
        y = 3 * y - k
        offset += scale * param.offset(digit)
        scale *= param.weight(digit)
    return offset + scale * y


def fn_slope_right(a: Union[Param, RationalLike], n: int, x: Point) -> Fraction:
    """Right-hand slope of f_n at x in [0,1): 3^n a^(n-i(n)) (1-2a)^i(n), with 0^0 = 1."""
    param = as_param(a)
    t = to_expansion(x)
    if t.is_one():
        raise DomainError("right slope needs x < 1")
    ones = ones_count_prefix(t, n)
    return 3**n * param.a ** (n - ones) * param.b**ones


@dataclass(frozen=True)
class Exact:
    """Closed-form evaluation in rational arithmetic."""


@dataclass(frozen=True)
class Approx:
    """Truncated evaluation; the error is at most tol."""

    tol: Fraction
    dps: int = DEFAULT_APPROX_DPS
    max_terms: int = DEFAULT_SERIES_MAX_TERMS

    def __post_init__(self):
        tol = to_fraction(self.tol, "tol")
        if tol <= 0:
            raise DomainError("tol must be positive")
        object.__setattr__(self, "tol", tol)


EXACT = Exact()


@dataclass(frozen=True)
class ApproxValue:
    value: mpf
    error_bound: Fraction
    terms: int

    def as_dict(self) -> dict:
        return {
            "value": mp.nstr(self.value, 20),
            "error_bound": float(self.error_bound),
            "terms": self.terms,
        }


def _word_sum(param: Param, word: str) -> Tuple[Fraction, Fraction]:
    """(sum_k M_{k-1} q(xi_k), M_len) over a finite digit word, M_0 = 1."""
    total, multiplier = Fraction(0), Fraction(1)
    for digit in word:
        total += multiplier * param.offset(digit)
        multiplier *= param.weight(digit)
    return total, multiplier


def eval_series(
    a: Union[Param, RationalLike], x: Point, terms: int
) -> Tuple[Fraction, Fraction]:
    """Partial sum of the digit series over `terms` digits and the bound max(a,|1-2a|)^terms on the rest."""
    param = as_param(a)
    t = to_expansion(x)
    partial, _ = _word_sum(param, t.digits(terms))
    return partial, param.contraction() ** terms


def eval(  # pylint: disable=redefined-builtin
    a: Union[Param, RationalLike],
    x: Point,
    mode: Union[Exact, Approx] = EXACT,
) -> Union[Fraction, ApproxValue]:
    """F_a(x) from the digit series F_a(x) = sum_k M_{k-1} q(xi_k), M_k the product of the digit weights.

    :param a: parameter
    :param x: expansion, rational or digit string
    :param mode: EXACT sums the periodic tail as a geometric series; Approx(tol) truncates
    :return: Fraction in Exact mode, ApproxValue otherwise

    :Example:

    >>> eval(Fraction(1, 2), Fraction(1, 4))
    Fraction(1, 3)
    """
    param = as_param(a)
    t = to_expansion(x)
    if isinstance(mode, Approx):
        return _eval_approx(param, t, mode)
    head, head_mult = _word_sum(param, t.preperiod)
    cycle, cycle_mult = _word_sum(param, t.period)
    # |cycle_mult| <= max(a, |1-2a|)^m < 1
    return head + head_mult * cycle / (1 - cycle_mult)


def _eval_approx(param: Param, t: EventuallyPeriodicTernary, mode: Approx) -> ApproxValue:
    rate = param.contraction()
    terms = 0
    bound = Fraction(1)
    while bound > mode.tol:
        terms += 1
        bound *= rate
        if terms > mode.max_terms:
            logger.warning("Refused series of more than %d terms", mode.max_terms)
            raise ResourceError(f"tol {mode.tol} needs more than {mode.max_terms} terms")
    with mp.workdps(mode.dps):
        a = mpf(param.a.numerator) / param.a.denominator
        weights = {"0": a, "1": 1 - 2 * a, "2": a}
        offsets = {"0": mpf(0), "1": a, "2": 1 - a}
        total, multiplier = mpf(0), mpf(1)
        for digit in t.digits(terms):
            total += multiplier * offsets[digit]
            multiplier *= weights[digit]
        logger.debug("approx eval used %d terms at %d dps", terms, mode.dps)
        return ApproxValue(+total, bound, terms)


def cantor_value(x: Point) -> Fraction:
    """Binary re-reading sum (xi_k/2) 2^-k of a point of the Cantor set."""
    t = to_expansion(x)
    if not in_cantor(t):
        raise DomainError(f"{t} is not in the Cantor set")
    preperiod, period = t.preperiod, t.period
    if "1" in preperiod:
        # 0.w1 = 0.w0222...
        preperiod, period = preperiod[:-1] + "0", "2"
    bits_pre = preperiod.replace("2", "1")
    bits_per = period.replace("2", "1")
    head = int(bits_pre, 2) if bits_pre else 0
    tail = Fraction(int(bits_per, 2), 2 ** len(bits_per) - 1)
    return (head + tail) / 2 ** len(bits_pre)


@dataclass
class GraphSample:
    """All breakpoints (k/3^n, f_n(k/3^n)) of the n-th approximant."""

    depth: int
    points: List[Tuple[Fraction, Fraction]] = field(default_factory=list)

    def ordinates(self) -> List[Fraction]:
        return [y for _, y in self.points]

    def rows(self, exact: bool = True) -> List[Tuple[str, str]]:
        if exact:
            return [(str(x), str(y)) for x, y in self.points]
        return [(repr(float(x)), repr(float(y))) for x, y in self.points]

    def to_csv(self, exact: bool = True) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(INTL_SA_CSV_HEADER_GRAPH)
        writer.writerows(self.rows(exact))
        return buf.getvalue()

    def to_json(self, exact: bool = True) -> str:
        return json.dumps([list(row) for row in self.rows(exact)])

    def write(self, path: str, fmt: str = "csv", exact: bool = True) -> None:
        text = self.to_csv(exact) if fmt == "csv" else self.to_json(exact)
        with open(path, "w", encoding="utf-8", newline="") as out:
            out.write(text)
        logger.info("Wrote %d graph points to %s", len(self.points), path)


def sample_graph(
    a: Union[Param, RationalLike],
    n: int,
    depth_cap: int = DEFAULT_GRAPH_DEPTH_CAP,
) -> GraphSample:
    """Breakpoints of f_n by n rounds of the refinement rule."""
    param = as_param(a)
    if n < 0:
        raise DomainError("depth must be nonnegative")
    if n > depth_cap:
        logger.warning("Refused graph depth %d above cap %d", n, depth_cap)
        raise ResourceError(f"graph depth {n} exceeds cap {depth_cap}")
    ys = [Fraction(0), Fraction(1)]
    for _ in range(n):
        refined = [ys[0]]
        for y0, y1 in zip(ys, ys[1:]):
            rise = y1 - y0
            refined.extend((y0 + param.a * rise, y1 - param.a * rise, y1))
        ys = refined
    step = Fraction(1, 3**n)
    return GraphSample(n, [(k * step, y) for k, y in enumerate(ys)])


def slopes(
    a: Union[Param, RationalLike], n: int, depth_cap: Optional[int] = None
) -> List[Fraction]:
    """The 3^n slopes of f_n, left to right."""
    sample = sample_graph(a, n, DEFAULT_GRAPH_DEPTH_CAP if depth_cap is None else depth_cap)
    ys = sample.ordinates()
    scale = 3**n
    return [(y1 - y0) * scale for y0, y1 in zip(ys, ys[1:])]
