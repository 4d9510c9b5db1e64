"""Exact rational helpers shared by every module.

Depths, valuations and break points are all rationals with small
denominators, so everything is kept as :class:`fractions.Fraction`.
The identity element of a ramification group has infinite depth; that
is represented by the :data:`INF` marker rather than a float.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union

RatLike = Union[int, str, Fraction]


class _Infinity:
    """Positive infinity for depths; compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("ramdepth-inf")


INF = _Infinity()


def rat(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if s in ("inf", "INF", "oo"):
            raise ValueError("infinity is not a rational; use INF")
        return Fraction(s)
    raise TypeError(f"cannot read {x!r} as a rational")


def rat_or_inf(x):
    if x is INF or (isinstance(x, str) and x.strip() in ("inf", "INF", "oo")):
        return INF
    return rat(x)


def fmt(x) -> str:
    """Serialize as ``"num/den"`` (always with a denominator) or ``"inf"``."""
    if x is INF:
        return "inf"
    x = rat(x)
    return f"{x.numerator}/{x.denominator}"


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def common_denominator(xs: Iterable) -> int:
    d = 1
    for x in xs:
        if x is INF:
            continue
        d = lcm(d, rat(x).denominator)
    return d


def frac_part(x: RatLike) -> Fraction:
    """Representative of x in Q/Z lying in [0, 1)."""
    x = rat(x)
    return x - (x.numerator // x.denominator)


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def rat_ceil(x: RatLike) -> int:
    x = rat(x)
    return ceil_div(x.numerator, x.denominator)


def rat_floor(x: RatLike) -> int:
    x = rat(x)
    return x.numerator // x.denominator


def prime_to(x: RatLike, p: int) -> bool:
    """True when the denominator of x is prime to p, i.e. x lies in Z_(p)."""
    return rat(x).denominator % p != 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True
