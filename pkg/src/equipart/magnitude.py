"""Magnitudes: exact rationals extended with power-tower descriptors.

Theorem-constant schedules produce values that overflow any fixed
precision (iterated exponentials of cluster-count bounds). A Magnitude
is either an exact positive rational or a tower descriptor

    val(height) = 2^2^...^2   (height twos),

optionally inverted for reciprocally tiny values. Heights are exact
(arbitrary ints, or Magnitudes for deeper nesting). Towers with height
at most 5 are evaluated to exact rationals at construction, so symbolic
towers always exceed 2^65536 and dominate every rational the toolkit
manipulates.

Comparisons are exact on the represented values. Arithmetic on symbolic
towers is deliberately coarse and one-directional: a tower absorbs
rational factors and smaller tower factors (product keeps the taller
height), and integer powers keep the height. Only the operations the
schedules need exist: min, max, product, integer power, reciprocal,
ceiling, comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from .exact import as_fraction

_EVAL_MAX_HEIGHT = 5  # val(5) = 2^65536 is the largest tower kept exact
_RAT_LOG2_CAP = 1 << 16


def _tower_value(height: int) -> int:
    v = 1
    for _ in range(height):
        v = 2**v
    return v


class MagnitudeError(ValueError):
    pass


@total_ordering
class Magnitude:
    """Positive quantity: exact rational or (possibly inverted) 2-tower."""

    __slots__ = ("kind", "rat", "height", "inverted")

    def __init__(self, kind: str, rat: Fraction | None = None,
                 height=None, inverted: bool = False):
        self.kind = kind
        self.rat = rat
        self.height = height
        self.inverted = inverted

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, value) -> "Magnitude":
        rat = as_fraction(value)
        if rat <= 0:
            raise MagnitudeError(f"magnitudes are positive, got {rat}")
        return cls("rat", rat=rat)

    @classmethod
    def tower(cls, height, inverted: bool = False) -> "Magnitude":
        """2^2^...^2 with the given number of twos (or its reciprocal)."""
        if isinstance(height, Magnitude):
            if height.kind == "rat":
                if height.rat.denominator == 1:
                    height = int(height.rat)
                else:
                    height = int(height.rat.__ceil__())
            else:
                if height.inverted:
                    height = 1
                else:
                    return cls("tower", height=height, inverted=inverted)
        if height <= _EVAL_MAX_HEIGHT:
            value = Fraction(_tower_value(max(0, height)))
            return cls.exact(1 / value if inverted else value)
        return cls("tower", height=height, inverted=inverted)

    @classmethod
    def coerce(cls, value) -> "Magnitude":
        if isinstance(value, Magnitude):
            return value
        return cls.exact(value)

    # -- predicates --------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.kind == "rat"

    def as_fraction(self) -> Fraction:
        if self.kind != "rat":
            raise MagnitudeError("symbolic tower has no exact rational value")
        return self.rat

    # -- comparison --------------------------------------------------------

    def _class_rank(self) -> int:
        if self.kind == "rat":
            return 1
        return 0 if self.inverted else 2

    @staticmethod
    def _cmp_heights(h1, h2) -> int:
        m1 = h1 if isinstance(h1, Magnitude) else Magnitude.exact(h1)
        m2 = h2 if isinstance(h2, Magnitude) else Magnitude.exact(h2)
        if m1 == m2:
            return 0
        return -1 if m1 < m2 else 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Magnitude):
            try:
                other = Magnitude.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "rat":
            return self.rat == other.rat
        return (
            self.inverted == other.inverted
            and self._cmp_heights(self.height, other.height) == 0
        )

    def __lt__(self, other) -> bool:
        if not isinstance(other, Magnitude):
            other = Magnitude.coerce(other)
        ra, rb = self._class_rank(), other._class_rank()
        if ra != rb:
            # Sanity: rationals we handle never reach tower scale.
            for m in (self, other):
                if m.kind == "rat" and (
                    m.rat.numerator.bit_length() > _RAT_LOG2_CAP
                    or m.rat.denominator.bit_length() > _RAT_LOG2_CAP
                ):
                    raise MagnitudeError(
                        "rational too large to order against a symbolic tower"
                    )
            return ra < rb
        if self.kind == "rat":
            return self.rat < other.rat
        c = self._cmp_heights(self.height, other.height)
        if self.inverted:
            return c > 0
        return c < 0

    def __hash__(self):
        if self.kind == "rat":
            return hash(("rat", self.rat))
        return hash(("tower", self.inverted))

    # -- coarse arithmetic ---------------------------------------------------

    def __mul__(self, other) -> "Magnitude":
        other = Magnitude.coerce(other)
        if self.kind == "rat" and other.kind == "rat":
            return Magnitude.exact(self.rat * other.rat)
        a, b = (self, other) if self.kind == "tower" else (other, self)
        if b.kind == "rat":
            # Towers absorb rational factors (coarse).
            return Magnitude("tower", height=a.height, inverted=a.inverted)
        if a.inverted == b.inverted:
            taller = a if self._cmp_heights(a.height, b.height) >= 0 else b
            return Magnitude("tower", height=taller.height, inverted=a.inverted)
        # huge * tiny: keep the dominant scale; equal heights collapse to 1
        c = self._cmp_heights(a.height, b.height)
        if c == 0:
            return Magnitude.exact(1)
        winner = a if c > 0 else b
        return Magnitude("tower", height=winner.height, inverted=winner.inverted)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Magnitude":
        return self * Magnitude.coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "Magnitude":
        return Magnitude.coerce(other) * self.reciprocal()

    def reciprocal(self) -> "Magnitude":
        if self.kind == "rat":
            return Magnitude.exact(1 / self.rat)
        return Magnitude("tower", height=self.height, inverted=not self.inverted)

    def __pow__(self, k: int) -> "Magnitude":
        if not isinstance(k, int):
            raise MagnitudeError("powers of magnitudes take integer exponents")
        if k == 0:
            return Magnitude.exact(1)
        if self.kind == "rat":
            return Magnitude.exact(self.rat**k)
        inverted = self.inverted if k > 0 else not self.inverted
        return Magnitude("tower", height=self.height, inverted=inverted)

    def ceil(self) -> "Magnitude":
        if self.kind == "rat":
            return Magnitude.exact(max(1, self.rat.__ceil__()))
        if self.inverted:
            return Magnitude.exact(1)
        return self

    # -- serialization -------------------------------------------------------

    def to_json(self):
        if self.kind == "rat":
            return {
                "kind": "rational",
                "num": self.rat.numerator,
                "den": self.rat.denominator,
            }
        height = (
            self.height.to_json()
            if isinstance(self.height, Magnitude)
            else self.height
        )
        return {
            "kind": "tower",
            "base": 2,
            "height": height,
            "top": 2,
            "inverted": self.inverted,
        }

    def __repr__(self):
        if self.kind == "rat":
            return f"Magnitude({self.rat})"
        inv = "1/" if self.inverted else ""
        return f"Magnitude({inv}2^^{self.height!r})"


def mag_min(*values) -> Magnitude:
    vals = [Magnitude.coerce(v) for v in values]
    out = vals[0]
    for v in vals[1:]:
        if v < out:
            out = v
    return out


def mag_max(*values) -> Magnitude:
    vals = [Magnitude.coerce(v) for v in values]
    out = vals[0]
    for v in vals[1:]:
        if v > out:
            out = v
    return out
