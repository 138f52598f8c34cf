"""Commutative semifields used as weight algebras.

Weights are exact: the tropical semifield works over :class:`fractions.Fraction`
with ``math.inf`` as its zero, so residual-weight vectors compare exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable


@dataclass(frozen=True, eq=False)
class Semifield:
    """Operations of a commutative semifield ``<K, plus, times, zero, one>``.

    ``inv`` is the multiplicative inverse and is only defined off zero.
    ``parse``/``format`` convert single elements to and from the text format.
    """

    name: str
    zero: Any
    one: Any
    plus: Callable[[Any, Any], Any]
    times: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    parse: Callable[[str], Any]
    format: Callable[[Any], str]
    zero_sum_free: bool = True

    def eq(self, x, y) -> bool:
        return x == y

    def is_zero(self, x) -> bool:
        return x == self.zero

    def sum(self, xs: Iterable) -> Any:
        total = self.zero
        for x in xs:
            total = self.plus(total, x)
        return total

    def product(self, xs: Iterable) -> Any:
        total = self.one
        for x in xs:
            total = self.times(total, x)
        return total

    def __repr__(self):
        return f"Semifield({self.name!r})"


def _bool_inv(x: bool) -> bool:
    if not x:
        raise ZeroDivisionError("zero has no inverse in the Boolean semifield")
    return True


def _bool_parse(token: str) -> bool:
    if token not in ("0", "1"):
        raise ValueError(f"not a Boolean weight: {token!r}")
    return token == "1"


BOOLEAN = Semifield(
    name="bool",
    zero=False,
    one=True,
    plus=lambda x, y: x or y,
    times=lambda x, y: x and y,
    inv=_bool_inv,
    parse=_bool_parse,
    format=lambda x: "1" if x else "0",
)


def _trop_plus(x, y):
    return x if x <= y else y


def _trop_times(x, y):
    if x == math.inf or y == math.inf:
        return math.inf
    return x + y


def _trop_inv(x):
    if x == math.inf:
        raise ZeroDivisionError("zero (inf) has no inverse in the tropical semifield")
    return -x


def _trop_parse(token: str) -> Fraction:
    if token.lower().lstrip("+-") in ("inf", "infinity", "nan"):
        raise ValueError(f"tropical weight must be finite: {token!r}")
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational weight: {token!r}") from exc


def format_rational(x) -> str:
    """Decimal when the expansion terminates, ``p/q`` otherwise."""
    if x == math.inf:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = abs(x.numerator) * 10**digits // x.denominator
    sign = "-" if x < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0")


TROPICAL = Semifield(
    name="tropical",
    zero=math.inf,
    one=Fraction(0),
    plus=_trop_plus,
    times=_trop_times,
    inv=_trop_inv,
    parse=_trop_parse,
    format=format_rational,
)

SEMIFIELDS = {s.name: s for s in (BOOLEAN, TROPICAL)}


def get_semifield(name: str) -> Semifield:
    try:
        return SEMIFIELDS[name]
    except KeyError:
        raise ValueError(f"unknown semiring {name!r}; expected one of {sorted(SEMIFIELDS)}") from None
