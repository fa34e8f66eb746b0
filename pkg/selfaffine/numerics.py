# Copyright 2024 selfaffine developers.
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance with the License. You may obtain a copy of the License at:http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the License for the specific language governing permissions and limitations under the License.

"""Certified root bracketing in exact rational arithmetic.

Every threshold constant of the package (a0, rho, the Komornik-Loreti reciprocal,
multinacci numbers and the truncated Thue-Morse roots) is the unique root of a
strictly increasing polynomial or power series on a known interval. Roots are
returned as Brackets whose endpoint signs were decided exactly; power series signs
are decided with an explicit tail bound and never guessed.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Dict, Optional, Sequence, Union

from selfaffine.sa_errors import NumericsError, ParseError

logger = logging.getLogger(__name__)

RationalLike = Union[Fraction, int, str, float]

DEFAULT_TOL = Fraction(1, 10**12)
_SERIES_START_TERMS = 32
_SERIES_MAX_TERMS = 1 << 16


def to_fraction(value: RationalLike, what: str = "value") -> Fraction:
    """Convert user input to an exact rational.

    Accepts ``p/q`` strings, decimal strings (converted exactly, e.g. ``0.55`` to 11/20),
    integers, Fractions and floats (converted from their exact binary value).
    """
    if isinstance(value, bool):
        raise ParseError(f"{what}: booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        converted = Fraction(value)
        logger.warning(
            "Converted float %s for %s to exact rational %s", value, what, converted
        )
        return converted
    if isinstance(value, str):
        text = value.strip()
        try:
            converted = Fraction(text)
        except (ValueError, ZeroDivisionError) as ex:
            raise ParseError(f"{what}: not a rational: {value!r}") from ex
        if "/" not in text and not text.lstrip("+-").isdigit():
            logger.warning(
                "Converted decimal %s for %s to exact rational %s",
                text,
                what,
                converted,
            )
        return converted
    raise ParseError(f"{what}: unsupported type {type(value).__name__}")


def sign(value) -> int:
    return (value > 0) - (value < 0)


def thue_morse_digit(j: int) -> int:
    """t_j: parity of the number of ones in the binary representation of j."""
    return bin(j).count("1") & 1


class Polynomial:
    """Polynomial with rational coefficients, coefficients[i] multiplying x**i."""

    def __init__(self, coefficients: Sequence[RationalLike], name: str = ""):
        coeffs = [to_fraction(c, "coefficient") for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)
        self.name = name

    def __call__(self, x: RationalLike) -> Fraction:
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def sign(self, x: RationalLike) -> int:
        return sign(self(x))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"Polynomial({self.pretty()})"

    def pretty(self, var: str = "a") -> str:
        """Human readable form, highest power first, e.g. ``a^3 + a^2 + a - 1``."""
        terms = []
        for power in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"


class TailBoundedSeries:
    """f(x) = constant + sum_{j >= start} c_j x^j with 0 <= c_j <= coeff_bound, for 0 < x < 1.

    The sign at x is certified from a partial sum S_J: f >= constant + S_J because the
    coefficients are nonnegative, and f <= constant + S_J + coeff_bound * x^(J+1)/(1-x).
    J doubles until one of the two decides.
    """

    def __init__(
        self,
        coefficient: Callable[[int], int],
        constant: RationalLike = 0,
        start: int = 1,
        coeff_bound: int = 1,
        name: str = "",
        max_terms: int = _SERIES_MAX_TERMS,
    ):
        self.coefficient = coefficient
        self.constant = to_fraction(constant)
        self.start = start
        self.coeff_bound = coeff_bound
        self.name = name
        self.max_terms = max_terms

    def partial(self, x: Fraction, terms: int) -> Fraction:
        acc = Fraction(0)
        for j in range(terms, self.start - 1, -1):
            acc = acc * x + self.coefficient(j)
        return acc * x**self.start

    def tail_bound(self, x: Fraction, terms: int) -> Fraction:
        return self.coeff_bound * x ** (terms + 1) / (1 - x)

    def sign(self, x: RationalLike) -> int:
        x = to_fraction(x)
        if not 0 < x < 1:
            raise NumericsError(f"series {self.name} evaluated outside (0,1)")
        terms = _SERIES_START_TERMS
        while terms <= self.max_terms:
            low = self.constant + self.partial(x, terms)
            if low > 0:
                return 1
            if low + self.tail_bound(x, terms) < 0:
                return -1
            terms *= 2
        raise NumericsError(
            f"sign of {self.name or 'series'} at {x} not certified within {self.max_terms} terms"
        )


SignEvaluator = Union[Polynomial, TailBoundedSeries]


@dataclass(frozen=True)
class Bracket:
    """Interval [lo, hi] holding a sign change of a strictly monotone function."""

    lo: Fraction
    hi: Fraction
    f_lo_sign: int
    f_hi_sign: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise NumericsError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo_sign * self.f_hi_sign >= 0:
            raise NumericsError(
                f"bracket [{self.lo}, {self.hi}] has no certified sign change"
            )

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        x = to_fraction(x)
        return self.lo <= x <= self.hi

    def certainly_below(self, x: RationalLike) -> bool:
        """The bracketed root is < x."""
        return self.hi < to_fraction(x)

    def certainly_above(self, x: RationalLike) -> bool:
        """The bracketed root is > x."""
        return self.lo > to_fraction(x)

    def as_dict(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "lo_decimal": float(self.lo),
            "hi_decimal": float(self.hi),
        }


def make_bracket(f: SignEvaluator, lo: RationalLike, hi: RationalLike) -> Bracket:
    lo, hi = to_fraction(lo), to_fraction(hi)
    return Bracket(lo, hi, f.sign(lo), f.sign(hi))


def bisect(
    f: SignEvaluator, bracket: Bracket, tol: RationalLike = DEFAULT_TOL
) -> Bracket:
    """Shrink bracket to width <= tol keeping its endpoint signs.

    f must be strictly monotone on the bracket; the endpoint signs are re-verified first.
    """
    tol = to_fraction(tol, "tol")
    if tol <= 0:
        raise NumericsError("tol must be positive")
    if (
        f.sign(bracket.lo) != bracket.f_lo_sign
        or f.sign(bracket.hi) != bracket.f_hi_sign
    ):
        raise NumericsError(
            f"sign-agreement failure on [{bracket.lo}, {bracket.hi}] for {getattr(f, 'name', f)}"
        )
    lo, hi = bracket.lo, bracket.hi
    steps = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = f.sign(mid)
        steps += 1
        if s == 0:
            # exact rational root: any interval around it keeps the signs
            half = min(tol / 2, (hi - lo) / 4)
            logger.debug("bisect hit exact root %s after %d steps", mid, steps)
            return Bracket(mid - half, mid + half, bracket.f_lo_sign, bracket.f_hi_sign)
        if s == bracket.f_lo_sign:
            lo = mid
        else:
            hi = mid
    logger.debug(
        "bisect %s converged in %d steps to width %s",
        getattr(f, "name", ""),
        steps,
        float(hi - lo),
    )
    return Bracket(lo, hi, bracket.f_lo_sign, bracket.f_hi_sign)


def find_root(
    f: SignEvaluator, lo: RationalLike, hi: RationalLike, tol: RationalLike = DEFAULT_TOL
) -> Bracket:
    return bisect(f, make_bracket(f, lo, hi), tol)


@dataclass(frozen=True)
class Constant:
    """A named threshold: an exact value, a certified bracket, or both."""

    name: str
    bracket: Optional[Bracket] = None
    exact: Optional[Fraction] = None
    symbolic: Optional[str] = None

    @property
    def lower(self) -> Fraction:
        return self.exact if self.exact is not None else self.bracket.lo

    @property
    def upper(self) -> Fraction:
        return self.exact if self.exact is not None else self.bracket.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def compare(self, x: RationalLike) -> Optional[int]:
        """-1 if the constant is certainly < x, 1 if certainly > x, 0 if equal, None if x is inside the bracket."""
        x = to_fraction(x)
        if self.exact is not None:
            return sign(self.exact - x)
        if self.bracket.certainly_below(x):
            return -1
        if self.bracket.certainly_above(x):
            return 1
        return None

    def as_dict(self) -> dict:
        payload = {
            "name": self.name,
            "lo": str(self.lower),
            "hi": str(self.upper),
            "lo_decimal": float(self.lower),
            "hi_decimal": float(self.upper),
        }
        if self.exact is not None:
            payload["exact"] = str(self.exact)
        if self.symbolic is not None:
            payload["symbolic"] = self.symbolic
        return payload


A0_POLYNOMIAL = Polynomial([-1, 0, -27, 54], name="a0")
RHO_POLYNOMIAL = Polynomial([-1, 1, 1], name="rho")
EXAMPLE_A_STAR_POLYNOMIAL = Polynomial([-1, 1, 2, -1], name="example_a_star")


def multinacci_polynomial(k: int) -> Polynomial:
    """a + a^2 + ... + a^k - 1"""
    return Polynomial([-1] + [1] * k, name=f"multinacci_{k}")


def a_hat_polynomial(n: int) -> Polynomial:
    """sum_{j=1}^{2^n} t_j a^j - 1"""
    return Polynomial(
        [-1] + [thue_morse_digit(j) for j in range(1, 2**n + 1)],
        name=f"a_hat_{n}",
    )


def thue_morse_series(max_terms: int = _SERIES_MAX_TERMS) -> TailBoundedSeries:
    """sum_{j>=1} t_j a^j - 1"""
    return TailBoundedSeries(
        thue_morse_digit, constant=-1, start=1, name="a_hat", max_terms=max_terms
    )


_HALF = Fraction(1, 2)


@lru_cache(maxsize=256)
def root_constant(name: str, tol: Fraction = DEFAULT_TOL) -> Constant:
    """Certified bracket of a named constant; memoized per (name, tol)."""
    logger.debug("Computing constant %s to tol %s", name, float(tol))
    if name == "a0":
        return Constant(name, find_root(A0_POLYNOMIAL, _HALF, Fraction(2, 3), tol))
    if name == "rho":
        return Constant(
            name,
            find_root(RHO_POLYNOMIAL, _HALF, 1, tol),
            symbolic="(sqrt(5)-1)/2",
        )
    if name == "example_a_star":
        return Constant(
            name, find_root(EXAMPLE_A_STAR_POLYNOMIAL, _HALF, 1, tol)
        )
    if name == "a_hat":
        return Constant(
            name, find_root(thue_morse_series(), _HALF, Fraction(3, 5), tol)
        )
    if name.startswith("a_hat_"):
        n = int(name[len("a_hat_"):])
        return Constant(name, find_root(a_hat_polynomial(n), _HALF, 1, tol))
    if name.startswith("multinacci_"):
        k = int(name[len("multinacci_"):])
        if k == 1:
            return Constant(name, exact=Fraction(1), symbolic="1")
        bracket = find_root(multinacci_polynomial(k), _HALF, 1, tol)
        return Constant(name, bracket, symbolic="(sqrt(5)-1)/2" if k == 2 else None)
    raise NumericsError(f"unknown constant {name}")


def _check_order(smaller: Constant, larger: Constant) -> None:
    if not smaller.upper < larger.lower:
        raise NumericsError(
            f"constant ordering {smaller.name} < {larger.name} not certified"
        )


@lru_cache(maxsize=1)
def _verify_ordering() -> None:
    half = Constant("1/2", exact=_HALF)
    multinacci = [root_constant(f"multinacci_{k}") for k in range(8, 2, -1)]
    a_hat, rho = root_constant("a_hat"), root_constant("rho")
    chain = [half] + multinacci + [a_hat, rho]
    for smaller, larger in zip(chain, chain[1:]):
        _check_order(smaller, larger)
    a0 = root_constant("a0")
    _check_order(a0, Constant("2/3", exact=Fraction(2, 3)))
    _check_order(a0, a_hat)


@lru_cache(maxsize=16)
def constants(tol: Fraction = DEFAULT_TOL) -> Dict[str, Constant]:
    """Table of a0, rho, a_hat, example_a_star and the multinacci numbers a_1..a_8.

    The chain 1/2 < a_8 < ... < a_3 < a_hat < rho, a0 < 2/3 and a0 < a_hat is verified on
    default-tolerance brackets before the table is returned.
    """
    tol = to_fraction(tol, "tol")
    table = {
        name: root_constant(name, tol)
        for name in ("a0", "rho", "a_hat", "example_a_star")
    }
    for k in range(1, 9):
        table[f"a_{k}"] = root_constant(f"multinacci_{k}", tol)

    _verify_ordering()
    logger.debug("Verified constant table at tol %s", float(tol))
    return table
