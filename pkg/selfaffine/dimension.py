# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Hausdorff dimensions of the zero, infinite and non-derivative sets of F_a.

Closed forms are evaluated with mpmath. Threshold parameters (a0, a_hat, rho, a_k)
are never compared in floating point: a0 and the multinacci numbers are roots of
polynomials increasing on the relevant range, so a <= root is an exact sign test,
and a_hat is compared through its certified bracket.
"""

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from mpmath import log, mp, mpf

from selfaffine.beta import komornik_loreti, multinacci, quasi_greedy_digits
from selfaffine.numerics import (
    A0_POLYNOMIAL,
    RationalLike,
    multinacci_polynomial,
    to_fraction,
)
from selfaffine.okamoto import Param, as_param
from selfaffine.sa_errors import DomainError, RegimeError, ResourceError, SelfAffineError

logger = logging.getLogger(__name__)

DEFAULT_DPS = 30
DEFAULT_ENTROPY_DEPTH = 30
DEFAULT_ENTROPY_DEPTH_CAP = 40
DEFAULT_LOOKAHEAD = 64
CLAMP_SLACK = mpf("1e-9")

_THIRD = Fraction(1, 3)
_HALF = Fraction(1, 2)
_TWO_THIRDS = Fraction(2, 3)

Real = Union[Fraction, mpf]


class DimMethod(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    MULTINACCI_BOUNDS = "MultinacciBounds"
    ENTROPY_COUNT = "EntropyCount"


@dataclass
class DimEstimate:
    lower: mpf
    upper: mpf
    point: Optional[mpf]
    method: DimMethod
    details: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def closed_form(cls, value: mpf) -> "DimEstimate":
        return cls(value, value, value, DimMethod.CLOSED_FORM)

    def as_dict(self) -> dict:
        payload = {
            "lower": float(self.lower),
            "upper": float(self.upper),
            "point": float(self.point) if self.point is not None else None,
            "method": self.method.value,
        }
        payload.update(self.details)
        return payload


def _real(x: Real) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _coerce(x: Union[Real, RationalLike], what: str) -> Real:
    if isinstance(x, Param):
        return x.a
    if isinstance(x, mpf):
        return x
    return to_fraction(x, what)


def _bound(x: Real, value: Fraction) -> Real:
    # mpf does not compare against Fraction
    return value if isinstance(x, Fraction) else _real(value)


def phi(a: Union[Real, RationalLike], dps: int = DEFAULT_DPS) -> mpf:
    """log(3a) / (log a - log|2a-1|) on [0, 2/3], extended continuously at 0, 1/3 and 1/2."""
    a = _coerce(a, "a")
    if not 0 <= a <= _bound(a, _TWO_THIRDS):
        raise DomainError(f"phi needs 0 <= a <= 2/3, got {a}")
    with mp.workdps(dps):
        if a == 0:
            return mpf(1)
        if a == _THIRD:
            return mpf(1) / 3
        if a == _HALF:
            return mpf(0)
        x = _real(a)
        return +(log(3 * x) / (log(x) - log(abs(2 * x - 1))))


def entropy_h(p: Union[Real, RationalLike], dps: int = DEFAULT_DPS) -> mpf:
    """(-p log p - (1-p) log(1-p) + (1-p) log 2) / log 3, with 0 log 0 = 0."""
    p = _coerce(p, "p")
    if not 0 <= p <= 1:
        raise DomainError(f"entropy_h needs 0 <= p <= 1, got {p}")
    with mp.workdps(dps):
        if p == _THIRD:
            return mpf(1)
        x = _real(p)
        total = mpf(0)
        if x > 0:
            total -= x * log(x)
        if x < 1:
            total += (1 - x) * (log(2) - log(1 - x))
        return +(total / log(3))


def d_of_a(a: Union[Real, RationalLike], dps: int = DEFAULT_DPS) -> mpf:
    return entropy_h(phi(a, dps), dps)


class FrequencyFamily(enum.Enum):
    """Sets of x by limsup u_1 and liminf l_1 of i(n)/n relative to p."""

    R_UPPER = "R^p"  # u_1 < p
    R_UPPER_CLOSED = "Rbar^p"  # u_1 <= p
    R_LOWER = "R_p"  # l_1 > p
    R_LOWER_CLOSED = "Rbar_p"  # l_1 >= p
    S_UPPER = "S^p"  # u_1 > p
    S_UPPER_CLOSED = "Sbar^p"  # u_1 >= p
    S_LOWER = "S_p"  # l_1 < p
    S_LOWER_CLOSED = "Sbar_p"  # l_1 <= p
    INTERSECTION = "S_p&S^p"


_SMALL_P_FAMILIES = {
    FrequencyFamily.R_UPPER,
    FrequencyFamily.R_UPPER_CLOSED,
    FrequencyFamily.S_LOWER,
    FrequencyFamily.S_LOWER_CLOSED,
}


def dim_frequency_set(
    p: Union[Real, RationalLike],
    family: Union[FrequencyFamily, str],
    q: Optional[Union[Real, RationalLike]] = None,
    dps: int = DEFAULT_DPS,
) -> mpf:
    """Dimension of a digit-frequency set.

    With family INTERSECTION and a second frequency q, returns the dimension
    min{h(p), h(q)} of {l_1 = p, u_1 = q}.
    """
    family = FrequencyFamily(family)
    p = _coerce(p, "p")
    if not 0 <= p <= 1:
        raise DomainError(f"frequency p = {p} outside [0,1]")
    if family is FrequencyFamily.INTERSECTION:
        if q is None:
            return entropy_h(p, dps)
        q = _coerce(q, "q")
        if not 0 < p <= q < 1:
            raise DomainError("two-frequency set needs 0 < p <= q < 1")
        return min(entropy_h(p, dps), entropy_h(q, dps))
    small = p <= _bound(p, _THIRD)
    if family in _SMALL_P_FAMILIES:
        return entropy_h(p, dps) if small else mpf(1)
    return mpf(1) if small else entropy_h(p, dps)


def _at_most_a0(a: Fraction) -> bool:
    # 54a^3 - 27a^2 - 1 is negative on (0, a0) and increasing past 1/3
    return A0_POLYNOMIAL.sign(a) <= 0


def dim_D0(a: Union[Param, RationalLike], dps: int = DEFAULT_DPS) -> mpf:
    """1 on (0, a0] minus 1/3, d(a) on [a0, 2/3], 0 from 2/3 on."""
    a = as_param(a).a
    if a == _THIRD:
        raise DomainError("F_{1/3} is the identity; the zero-derivative set is empty")
    if a >= _TWO_THIRDS:
        return mpf(0)
    if _at_most_a0(a):
        return mpf(1)
    return d_of_a(a, dps)


def dim_Dinf_closed(a: Union[Param, RationalLike], dps: int = DEFAULT_DPS) -> mpf:
    """d(a) for 0 < a <= 1/2, a != 1/3."""
    a = as_param(a).a
    if a == _THIRD:
        raise DomainError("F_{1/3} is the identity; no infinite derivatives")
    if a > _HALF:
        raise RegimeError(f"no closed form for a = {a} > 1/2; use dim_Dinf_bounds")
    return d_of_a(a, dps)


def dim_N(a: Union[Param, RationalLike], dps: int = DEFAULT_DPS) -> mpf:
    """d(a) below a0 (a not 1/3 or 1/2), (log_3 2)^2 at 1/2, 1 from a0 on."""
    a = as_param(a).a
    if a == _THIRD:
        raise DomainError("F_{1/3} is the identity; it is differentiable everywhere")
    with mp.workdps(dps):
        if a == _HALF:
            return +((log(2) / log(3)) ** 2)
    if not _at_most_a0(a):
        return mpf(1)
    return d_of_a(a, dps)


def box_dimension_graph(a: Union[Param, RationalLike], dps: int = DEFAULT_DPS) -> mpf:
    """1 for a <= 1/2, else 1 + log_3(4a - 1)."""
    a = as_param(a).a
    if a <= _HALF:
        return mpf(1)
    with mp.workdps(dps):
        return +(1 + log(_real(4 * a - 1)) / log(3))


def dim_Qk(k: int, dps: int = DEFAULT_DPS) -> mpf:
    """Dimension -log(a_{k-1}) / log 3 of the sequences with no run 1^k or 0^k."""
    if k < 2:
        raise DomainError("dim_Qk needs k >= 2")
    if k == 2:
        return mpf(0)
    with mp.workdps(dps):
        return +(-log(_real(multinacci(k - 1).midpoint)) / log(3))


def _check_uncountable_regime(lam: Fraction) -> None:
    if lam <= _HALF or komornik_loreti().compare(lam) != 1:
        raise RegimeError(f"a = {lam} is not certainly inside (1/2, a_hat)")


class _ComparisonAutomaton:
    """Words w with every suffix s satisfying s <= d and s_bar <= d prefix-wise.

    A state is the pair of current match lengths of the word and of its reflection
    against d; a symbol below the next digit of d resets the match to 0, which is exact
    because d is self-admissible.
    """

    def __init__(self, d: str):
        self.d = d
        self._alive: Dict[Tuple[int, int, int], bool] = {}

    def step(self, state: Tuple[int, int], c: int) -> Optional[Tuple[int, int]]:
        i, j = state
        di, dj = int(self.d[i]), int(self.d[j])
        if c > di or 1 - c > dj:
            return None
        return (i + 1 if c == di else 0, j + 1 if 1 - c == dj else 0)

    def extends(self, state: Tuple[int, int], steps: int) -> bool:
        """Some path of length `steps` leaves state."""
        frontier = {state}
        for _ in range(steps):
            frontier = {self.step(s, c) for s in frontier for c in (0, 1)}
            frontier.discard(None)
            if not frontier:
                return False
        return True


def _automaton(lam: Fraction, n: int, lookahead: int) -> _ComparisonAutomaton:
    return _ComparisonAutomaton(quasi_greedy_digits(lam, n + lookahead + 1))


def _check_count_args(lam: Fraction, n: int, depth_cap: int) -> None:
    _check_uncountable_regime(lam)
    if n < 1:
        raise DomainError("n must be positive")
    if n > depth_cap:
        logger.warning("Refused entropy depth %d above cap %d", n, depth_cap)
        raise ResourceError(f"entropy depth {n} exceeds cap {depth_cap}")


def count_admissible_words(
    lam: Union[Param, RationalLike],
    n: int,
    lookahead: int = DEFAULT_LOOKAHEAD,
    depth_cap: int = DEFAULT_ENTROPY_DEPTH_CAP,
) -> int:
    """N_n(lambda): words of length n that extend by `lookahead` more symbols inside U_lambda's language."""
    lam = as_param(lam).a
    _check_count_args(lam, n, depth_cap)
    automaton = _automaton(lam, n, lookahead)
    counts: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for _ in range(n):
        nxt: Dict[Tuple[int, int], int] = {}
        for state, count in counts.items():
            for c in (0, 1):
                target = automaton.step(state, c)
                if target is not None:
                    nxt[target] = nxt.get(target, 0) + count
        counts = nxt
    total = sum(
        count for state, count in counts.items() if automaton.extends(state, lookahead)
    )
    logger.debug("N_%d(%s) = %d over %d states", n, lam, total, len(counts))
    return total


def admissible_words(
    lam: Union[Param, RationalLike],
    n: int,
    lookahead: int = DEFAULT_LOOKAHEAD,
    depth_cap: int = DEFAULT_ENTROPY_DEPTH_CAP,
) -> List[str]:
    """The words counted by count_admissible_words, in lexicographic order."""
    lam = as_param(lam).a
    _check_count_args(lam, n, depth_cap)
    automaton = _automaton(lam, n, lookahead)
    words: List[str] = []

    def walk(prefix: str, state: Tuple[int, int]) -> None:
        if len(prefix) == n:
            if automaton.extends(state, lookahead):
                words.append(prefix)
            return
        for c in (0, 1):
            target = automaton.step(state, c)
            if target is not None:
                walk(prefix + str(c), target)

    walk("", (0, 0))
    return words


def multinacci_level(a: Fraction) -> int:
    """k with a in [a_{k+1}, a_k), for 1/2 < a < 1."""
    if not _HALF < a < 1:
        raise DomainError(f"multinacci level needs 1/2 < a < 1, got {a}")
    k = 1
    while multinacci_polynomial(k + 1).sign(a) < 0:
        k += 1
    return k


def dim_Dinf_bounds(
    a: Union[Param, RationalLike],
    entropy_depth: int = DEFAULT_ENTROPY_DEPTH,
    lookahead: int = DEFAULT_LOOKAHEAD,
    depth_cap: int = DEFAULT_ENTROPY_DEPTH_CAP,
    dps: int = DEFAULT_DPS,
) -> DimEstimate:
    """Bounds -log(a_{k-1})/log 3 <= dim <= -log(a_k)/log 3 and the count estimate log N_n/(n log 3).

    The estimate is clamped into the bounds only when it misses them by less than
    1e-9; otherwise it is reported as is and flagged.
    """
    a = as_param(a).a
    _check_uncountable_regime(a)
    k = multinacci_level(a)
    with mp.workdps(dps):
        log3 = log(3)
        # a_{k-1} and a_k enter through their bracket ends so the bounds stay outer
        lower = mpf(0) if k == 2 else -log(_real(multinacci(k - 1).upper)) / log3
        upper = -log(_real(multinacci(k).lower)) / log3
        count = count_admissible_words(a, entropy_depth, lookahead, depth_cap)
        point = log(count) / (entropy_depth * log3)
        flags = []
        if point > upper:
            if point - upper < CLAMP_SLACK:
                point = upper
                flags.append("clamped")
            else:
                flags.append("above_upper")
        if point < lower:
            if lower - point < CLAMP_SLACK:
                point = lower
                flags.append("clamped")
            else:
                flags.append("below_lower")
        if flags:
            logger.info("entropy estimate at a = %s flagged %s", a, flags)
        return DimEstimate(
            +lower,
            +upper,
            +point,
            DimMethod.ENTROPY_COUNT,
            {
                "k": k,
                "bounds_method": DimMethod.MULTINACCI_BOUNDS.value,
                "entropy_depth": entropy_depth,
                "count": count,
                "flags": flags,
            },
        )


def dim_Dinf(a: Union[Param, RationalLike], **kwargs) -> DimEstimate:
    """Dimension of the infinite-derivative set for any a in (0,1), a != 1/3.

    Closed form up to 1/2, bounds and estimate on (1/2, a_hat), and 0 from a_hat on
    where the set is countable or empty.
    """
    a = as_param(a).a
    dps = kwargs.get("dps", DEFAULT_DPS)
    if a <= _HALF:
        return DimEstimate.closed_form(dim_Dinf_closed(a, dps))
    if a + a * a >= 1 or komornik_loreti().compare(a) != 1:
        return DimEstimate.closed_form(mpf(0))
    return dim_Dinf_bounds(a, **kwargs)


_SWEEP_SETS: Dict[str, Callable[[Fraction, int], mpf]] = {
    "D0": dim_D0,
    "Dinf": lambda a, dps: dim_Dinf(a, dps=dps).point,
    "N": dim_N,
    "graph-box": box_dimension_graph,
    "phi": phi,
    "d": d_of_a,
}


def sweep_sets() -> List[str]:
    return list(_SWEEP_SETS)


def _grid(lo: Fraction, hi: Fraction, step: Fraction) -> List[Fraction]:
    if step <= 0 or lo > hi:
        raise DomainError("sweep needs lo <= hi and step > 0")
    count = int((hi - lo) / step) + 1
    return [lo + i * step for i in range(count)]


def dim_sweep(
    set_name: str,
    lo: RationalLike,
    hi: RationalLike,
    step: RationalLike,
    workers: int = 4,
    dps: int = DEFAULT_DPS,
) -> List[Tuple[Fraction, Optional[mpf]]]:
    """(a, value) rows over lo, lo + step, ..., in grid order. Undefined values are None.

    mpmath precision is process-wide: it is set to `dps` before the pool starts and
    every worker evaluates at that same `dps`.
    """
    if set_name not in _SWEEP_SETS:
        raise DomainError(f"unknown sweep set {set_name}")
    if dps < 1:
        raise DomainError("dps must be positive")
    evaluate = _SWEEP_SETS[set_name]
    grid = _grid(to_fraction(lo, "lo"), to_fraction(hi, "hi"), to_fraction(step, "step"))

    def row(a: Fraction) -> Tuple[Fraction, Optional[mpf]]:
        try:
            return a, evaluate(a, dps)
        except SelfAffineError as ex:
            logger.debug("sweep %s undefined at %s: %s", set_name, a, ex)
            return a, None

    with mp.workdps(dps):
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, grid))
