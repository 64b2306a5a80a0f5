"""Exact rational coercion used across the toolkit.

Floats are interpreted through their shortest decimal repr, so 0.1 means
1/10 exactly. Pass a Fraction directly when a binary float is intended.
"""

from __future__ import annotations

from fractions import Fraction


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational parameter")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def frac_floor(x: Fraction) -> int:
    return x.numerator // x.denominator
