# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Derivative of F_a at rational points.

The right slope of f_n at x is 3^n a^(n-i(n)) (1-2a)^i(n). For an eventually
periodic x its per-digit growth is fixed by the frequency p of the digit 1 in the
period, so whether the slopes decay or blow up is an exact comparison in rationals.
When they blow up for a > 1/2, infinite derivatives are decided by one polynomial
inequality per side built from the lexicographically largest rotation of the 1-free
period.
"""

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from mpmath import log, mp, mpf

from selfaffine.beta import BinaryEPSeq, komornik_loreti, pi_lambda
from selfaffine.numerics import (
    DEFAULT_TOL,
    Bracket,
    Polynomial,
    RationalLike,
    find_root,
    sign,
    to_fraction,
)
from selfaffine.okamoto import Param, Point, as_param
from selfaffine.sa_errors import DomainError, PreconditionError
from selfaffine.ternary import (
    INFINITY,
    EventuallyPeriodicTernary,
    digit_one_frequency,
    digit_positions,
    format_digits,
    to_expansion,
    total_ones,
)

logger = logging.getLogger(__name__)

_THIRD = Fraction(1, 3)
_HALF = Fraction(1, 2)


class DerivTag(enum.Enum):
    ZERO = "Zero"
    PLUS_INFINITY = "PlusInfinity"
    MINUS_INFINITY = "MinusInfinity"
    CUSP_UP = "CuspUp"
    CUSP_DOWN = "CuspDown"
    CLIFF_LEFT = "CliffLeft"
    CLIFF_RIGHT = "CliffRight"
    FINITE_NONZERO = "FiniteNonzero"
    NOT_DIFFERENTIABLE = "NotDifferentiable"
    UNKNOWN = "Unknown"

    @property
    def is_infinite(self) -> bool:
        return self in (DerivTag.PLUS_INFINITY, DerivTag.MINUS_INFINITY)


class Rule(enum.Enum):
    """Which rule decided a classification."""

    IDENTITY = "identity_map"
    TRIADIC_CUSP = "triadic_cusp"
    TRIADIC_REMOVED_INTERVAL = "triadic_in_removed_interval"
    TRIADIC_CLIFF = "triadic_gap_endpoint"
    TRIADIC_GROWING_SLOPES = "triadic_growing_slopes"
    TRIADIC_DECAYING_SLOPES = "triadic_decaying_slopes"
    CANTOR_REMOVED_INTERVAL = "cantor_removed_interval"
    CANTOR_BOUNDED_RUNS = "cantor_bounded_runs"
    SLOPES_DECAY = "slopes_decay"
    SLOPES_GROW = "slopes_grow"
    SLOPES_OSCILLATE = "slopes_oscillate"
    INFINITELY_MANY_ONES = "infinitely_many_ones"
    SIDE_CONDITIONS_HOLD = "side_conditions_hold"
    SIDE_CONDITION_FAILS = "side_condition_fails"
    SIDE_CONDITION_BOUNDARY = "side_condition_boundary"
    ENDPOINT = "endpoint_slope"


@dataclass(frozen=True)
class DerivClass:
    tag: DerivTag
    justification: Rule
    value: Optional[Fraction] = None

    def as_dict(self) -> dict:
        payload = {"tag": self.tag.value, "justification": self.justification.value}
        if self.value is not None:
            payload["value"] = str(self.value)
        return payload


class Side(enum.Enum):
    RIGHT = "Right"
    LEFT = "Left"
    BOTH = "Both"


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    BOUNDARY = "Boundary"


def _side_expansion(t: EventuallyPeriodicTernary, side: Side) -> EventuallyPeriodicTernary:
    return t if side is Side.RIGHT else t.complement()


def _check_finite_ones(t: EventuallyPeriodicTernary) -> None:
    if total_ones(t) == INFINITY:
        raise PreconditionError(f"{t} has infinitely many digits 1")


def _check_interior(t: EventuallyPeriodicTernary) -> None:
    value = t.value()
    if not 0 < value < 1:
        raise DomainError(f"x = {value} outside (0,1)")


def side_polynomial(t: EventuallyPeriodicTernary, side: Side) -> Tuple[str, Polynomial]:
    """(eta, P - 1) for one side, P(a) = sum_{j<m} eta_j a^j + a^m."""
    _check_finite_ones(t)
    _check_interior(t)
    period = _side_expansion(t, side).period
    zeta = max(period[i:] + period[:i] for i in range(len(period)))
    eta = zeta.replace("2", "1")
    coefficients = [-1] + [int(e) for e in eta[:-1]] + [1]
    return eta, Polynomial(coefficients, name=f"side_{side.value.lower()}")


@dataclass(frozen=True)
class SideCondition:
    side: Side
    m: int
    eta: str
    polynomial: Polynomial
    value: Fraction
    verdict: Verdict

    def as_dict(self) -> dict:
        return {
            "side": self.side.value,
            "m": self.m,
            "eta": self.eta,
            "polynomial": f"{self.polynomial.pretty()}",
            "value": str(self.value),
            "verdict": self.verdict.value,
        }


def side_condition(
    a: Union[Param, RationalLike], x: Point, side: Side = Side.RIGHT
) -> SideCondition:
    """Evaluate sum_{j<m} eta_j a^j + a^m < 1 for one side of x.

    The Left side is read from the expansion of 1 - x. Equality counts as Fails; the
    Boundary verdict only appears for an inexact parameter within its eps of the root.

    :Example:

    >>> side_condition(Fraction(11, 20), "0.(20)").verdict
    <Verdict.HOLDS: 'Holds'>
    """
    param = as_param(a)
    t = to_expansion(x)
    if side is Side.BOTH:
        raise DomainError("side_condition takes Right or Left")
    eta, poly = side_polynomial(t, side)
    value = poly(param.a) + 1
    if not param.exact and abs(value - 1) <= param.eps:
        verdict = Verdict.BOUNDARY
    elif value < 1:
        verdict = Verdict.HOLDS
    else:
        verdict = Verdict.FAILS
    return SideCondition(side, len(eta), eta, poly, value, verdict)


@dataclass(frozen=True)
class CriticalParameter:
    """Supremum a* of the parameters below which both side conditions hold."""

    x: EventuallyPeriodicTernary
    bracket: Optional[Bracket]
    binding_side: Optional[Side]
    degenerate: bool
    polynomials: Dict[Side, Polynomial] = field(default_factory=dict)
    etas: Dict[Side, str] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "x": format_digits(self.x),
            "degenerate": self.degenerate,
            "a_star": self.bracket.as_dict() if self.bracket else None,
            "binding_side": self.binding_side.value if self.binding_side else None,
            "conditions": [
                {
                    "side": side.value,
                    "eta": self.etas[side],
                    "polynomial": self.polynomials[side].pretty() + " < 0",
                }
                for side in self.polynomials
            ],
        }


def critical_parameter(x: Point, tol: RationalLike = DEFAULT_TOL) -> CriticalParameter:
    """Bracket a*(x) by bisection on the binding side's polynomial over (1/3, 1).

    Triadic x is degenerate: both conditions hold for every a < 1.
    """
    t = to_expansion(x)
    _check_finite_ones(t)
    _check_interior(t)
    tol = to_fraction(tol, "tol")
    if t.is_triadic():
        return CriticalParameter(t, None, None, True)
    etas, polys, roots = {}, {}, {}
    for side in (Side.RIGHT, Side.LEFT):
        etas[side], polys[side] = side_polynomial(t, side)
        roots[side] = find_root(polys[side], _THIRD, 1, tol)
    right, left = roots[Side.RIGHT], roots[Side.LEFT]
    if polys[Side.RIGHT] == polys[Side.LEFT]:
        binding, bracket = Side.BOTH, right
    elif right.hi < left.lo:
        binding, bracket = Side.RIGHT, right
    elif left.hi < right.lo:
        binding, bracket = Side.LEFT, left
    else:
        binding = Side.BOTH
        bracket = right if right.width <= left.width else left
    logger.debug("critical parameter of %s bound by %s", t, binding.value)
    return CriticalParameter(t, bracket, binding, False, polys, etas)


def growth_sign(a: Fraction, p: Fraction) -> int:
    """Sign of log 3 + (1-p) log a + p log|1-2a|, decided in rationals.

    With p = u/v this is the sign of 3^v a^(v-u) |1-2a|^u - 1.
    """
    u, v = p.numerator, p.denominator
    return sign(3**v * a ** (v - u) * abs(1 - 2 * a) ** u - 1)


def growth_exponent(a: Fraction, p: Fraction, dps: int = 30) -> Optional[mpf]:
    """Per-digit log growth of |f_n^+|, None where it is -infinity."""
    if p > 0 and a == _HALF:
        return None
    with mp.workdps(dps):
        value = log(3) + (1 - p) * log(mpf(a.numerator) / a.denominator)
        if p > 0:
            value += p * log(abs(mpf(1) - 2 * mpf(a.numerator) / a.denominator))
        return +value


def _classify_triadic(a: Fraction, t: EventuallyPeriodicTernary) -> DerivClass:
    if a > _HALF:
        ones = total_ones(t)
        tag = DerivTag.CUSP_UP if ones % 2 == 0 else DerivTag.CUSP_DOWN
        return DerivClass(tag, Rule.TRIADIC_CUSP)
    if a == _HALF:
        head, last = t.preperiod[:-1], t.preperiod[-1]
        if "1" in head:
            return DerivClass(DerivTag.ZERO, Rule.TRIADIC_REMOVED_INTERVAL)
        tag = DerivTag.CLIFF_LEFT if last == "1" else DerivTag.CLIFF_RIGHT
        return DerivClass(tag, Rule.TRIADIC_CLIFF)
    if a > _THIRD:
        return DerivClass(DerivTag.PLUS_INFINITY, Rule.TRIADIC_GROWING_SLOPES)
    return DerivClass(DerivTag.ZERO, Rule.TRIADIC_DECAYING_SLOPES)


def classify(a: Union[Param, RationalLike], x: Point) -> DerivClass:
    """Classify F_a'(x) for rational x in (0,1).

    :param a: parameter, exact unless built with Param.approximate
    :param x: expansion, rational or digit string
    :return: DerivClass with the tag and the rule that decided it
    """
    param = as_param(a)
    t = to_expansion(x)
    _check_interior(t)
    a = param.a
    if a == _THIRD:
        return DerivClass(DerivTag.FINITE_NONZERO, Rule.IDENTITY, Fraction(1))
    if t.is_triadic():
        return _classify_triadic(a, t)
    if a == _HALF:
        if "1" in t.preperiod + t.period:
            return DerivClass(DerivTag.ZERO, Rule.CANTOR_REMOVED_INTERVAL)
        return DerivClass(DerivTag.PLUS_INFINITY, Rule.CANTOR_BOUNDED_RUNS)

    s = growth_sign(a, digit_one_frequency(t))
    if s < 0:
        return DerivClass(DerivTag.ZERO, Rule.SLOPES_DECAY)
    if s == 0:
        return DerivClass(DerivTag.NOT_DIFFERENTIABLE, Rule.SLOPES_OSCILLATE)
    if a < _HALF:
        return DerivClass(DerivTag.PLUS_INFINITY, Rule.SLOPES_GROW)

    ones = total_ones(t)
    if ones == INFINITY:
        return DerivClass(DerivTag.NOT_DIFFERENTIABLE, Rule.INFINITELY_MANY_ONES)
    verdicts = [side_condition(param, t, side).verdict for side in (Side.RIGHT, Side.LEFT)]
    if Verdict.FAILS in verdicts:
        return DerivClass(DerivTag.NOT_DIFFERENTIABLE, Rule.SIDE_CONDITION_FAILS)
    if Verdict.BOUNDARY in verdicts:
        return DerivClass(DerivTag.UNKNOWN, Rule.SIDE_CONDITION_BOUNDARY)
    tag = DerivTag.PLUS_INFINITY if ones % 2 == 0 else DerivTag.MINUS_INFINITY
    return DerivClass(tag, Rule.SIDE_CONDITIONS_HOLD)


@dataclass(frozen=True)
class EndpointBehavior:
    at0: DerivClass
    at1: DerivClass

    def as_dict(self) -> dict:
        return {"at0": self.at0.as_dict(), "at1": self.at1.as_dict()}


def endpoint_behavior(a: Union[Param, RationalLike]) -> EndpointBehavior:
    """F_a^+(0) = F_a^-(1): infinite iff a > 1/3."""
    a = as_param(a).a
    if a == _THIRD:
        slope = DerivClass(DerivTag.FINITE_NONZERO, Rule.IDENTITY, Fraction(1))
    elif a > _THIRD:
        slope = DerivClass(DerivTag.PLUS_INFINITY, Rule.ENDPOINT)
    else:
        slope = DerivClass(DerivTag.ZERO, Rule.ENDPOINT)
    return EndpointBehavior(slope, slope)


class DinfRegime(enum.Enum):
    EMPTY = "Empty"
    COUNTABLE_RATIONAL = "CountableRational"
    UNCOUNTABLE_POSITIVE_DIM = "UncountablePositiveDim"
    CRITICAL_UNKNOWN = "CriticalUnknown"


def dinf_membership_regime(a: Union[Param, RationalLike]) -> DinfRegime:
    """Size of the infinite-derivative set for 1/2 < a < 1.

    rho is decided exactly by a + a^2 >= 1; a_hat through its bracket, widened by eps.
    """
    param = as_param(a)
    a = param.a
    if a <= _HALF:
        raise DomainError(f"regime needs a > 1/2, got {a}")
    if a + a * a >= 1:
        return DinfRegime.EMPTY
    a_hat = komornik_loreti()
    if a_hat.lower - param.eps <= a <= a_hat.upper + param.eps:
        logger.info("a = %s within eps of a_hat", a)
        return DinfRegime.CRITICAL_UNKNOWN
    if a > a_hat.upper:
        return DinfRegime.COUNTABLE_RATIONAL
    return DinfRegime.UNCOUNTABLE_POSITIVE_DIM


def _indicator(t: EventuallyPeriodicTernary, d: str) -> BinaryEPSeq:
    flag = str.maketrans({c: ("1" if c == d else "0") for c in "012"})
    return BinaryEPSeq(t.preperiod.translate(flag), t.period.translate(flag))


def tail_weight(
    a: Union[Param, RationalLike], x: Point, n: int, d: Union[int, str]
) -> Fraction:
    """sum_{k>=1} a^k [xi_{n+k} = d], exact."""
    param = as_param(a)
    t = to_expansion(x)
    return pi_lambda(param.a, _indicator(t.shift(n), str(d)))


def limsup_tail_weight(a: Union[Param, RationalLike], x: Point, d: Union[int, str]) -> Fraction:
    """limsup over n of tail_weight: the maximum over the phases of the period."""
    param = as_param(a)
    t = to_expansion(x)
    d = str(d)
    return max(
        pi_lambda(param.a, _indicator(EventuallyPeriodicTernary("", rot), d))
        for rot in t.rotations()
    )


def main_condition_term(
    a: Union[Param, RationalLike], x: Point, n: int, d: Union[int, str]
) -> Fraction:
    """(3a)^n (1 - tail_weight(a, x, n, d)); tends to infinity iff that side has an infinite slope."""
    param = as_param(a)
    return (3 * param.a) ** n * (1 - tail_weight(param, x, n, d))


def stream_tail_weights(
    a: Union[Param, RationalLike], digits: str, d: Union[int, str]
) -> List[Fraction]:
    """Truncated tail weights w_n = sum_{k<=len-n} a^k [digits[n+k-1] = d], n = 0..len-1."""
    param = as_param(a)
    d = str(d)
    weights: List[Fraction] = []
    acc = Fraction(0)
    for ch in reversed(digits):
        acc = param.a * ((1 if ch == d else 0) + acc)
        weights.append(acc)
    weights.reverse()
    return weights


def eidswick_ratios(x: Point, n: int, d: Union[int, str] = 0) -> List[Fraction]:
    """3^z(k) / 2^z(k+1), k = 1..n, z(k) the position of the k-th digit d."""
    t = to_expansion(x)
    positions = digit_positions(t, d, n + 1)
    return [Fraction(3**z, 2**z_next) for z, z_next in zip(positions, positions[1:])]


def classification_report(a: Union[Param, RationalLike], x: Point, dps: int = 30) -> dict:
    """Everything classify looked at, as a JSON-ready dict."""
    param = as_param(a)
    t = to_expansion(x)
    result = classify(param, t)
    p = digit_one_frequency(t)
    exponent = growth_exponent(param.a, p, dps)
    report = {
        "x": format_digits(t),
        "x_value": str(t.value()),
        "a": str(param.a),
        "tag": result.tag.value,
        "justification": result.justification.value,
        "value": str(result.value) if result.value is not None else None,
        "one_frequency": str(p),
        "growth_exponent": mp.nstr(exponent, 15) if exponent is not None else None,
        "side_conditions": [],
        "critical_parameter": None,
        "endpoints": endpoint_behavior(param).as_dict(),
    }
    if total_ones(t) != INFINITY and not t.is_triadic():
        report["side_conditions"] = [
            side_condition(param, t, side).as_dict() for side in (Side.RIGHT, Side.LEFT)
        ]
        report["critical_parameter"] = critical_parameter(t).as_dict()
    return report
