"""Helpers for exact rational scalars and vectors.

All kernel computations run over `fractions.Fraction`, which already
guarantees lowest terms and a positive denominator.  This module only adds
parsing/formatting for the JSON wire format ("p/q" strings) and a few vector
conveniences used throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4' or '-2', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> Vec:
    return tuple(rat(x) for x in xs)


def vec_str(v: Sequence[Fraction]) -> list[str]:
    return [rat_str(x) for x in v]


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b, strict=True)), Fraction(0))


def vadd(a: Sequence, b: Sequence) -> Vec:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b, strict=True))


def vsub(a: Sequence, b: Sequence) -> Vec:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b, strict=True))


def vscale(c, a: Sequence) -> Vec:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in a)
