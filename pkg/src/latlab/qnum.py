"""Exact arithmetic in the field Q(sqrt(2)).

A Num is a + b*sqrt(2) with rational a, b.  All comparisons are decided
exactly by sign analysis: a + b*sqrt(2) and 0 compare via the signs of a and
b, falling back to comparing a^2 against 2*b^2 when they disagree.  No
floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make a rational out of {x!r}")


class Num:
    """a + b*sqrt(2), immutable, hashable, totally ordered."""

    __slots__ = ("a", "b", "_h")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "_h", None)

    def __setattr__(self, *_):
        raise AttributeError("Num is immutable")

    # --- algebra ---

    def __add__(self, other):
        other = _coerce(other)
        return Num(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Num(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        # (a + b r)(c + d r) = ac + 2bd + (ad + bc) r   with r^2 = 2
        return Num(self.a * other.a + 2 * self.b * other.b,
                   self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        denom = other.a * other.a - 2 * other.b * other.b
        if denom == 0:
            if other.a == 0 and other.b == 0:
                raise ZeroDivisionError("division by zero Num")
            raise ZeroDivisionError("denominator is zero (a^2 = 2 b^2 only for 0)")
        # multiply by the conjugate (a - b r) / (a^2 - 2 b^2)
        return self * Num(other.a / denom, -other.b / denom)

    def __neg__(self):
        return Num(-self.a, -self.b)

    # --- order ---

    def sign(self) -> int:
        return _sign2(self.a, self.b)

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if self.b == other.b:  # common (rational vs rational) fast path
            a1, a2 = self.a, other.a
            return (a1 > a2) - (a1 < a2)
        return _sign2(self.a - other.a, self.b - other.b)

    def __eq__(self, other):
        if not isinstance(other, (Num, Fraction, int)):
            return NotImplemented
        other = _coerce(other)
        # the representation is unique: a + b*sqrt2 determines (a, b)
        return self.a == other.a and self.b == other.b

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        # equality is structural (a, b determine the value), so a cached
        # field hash is consistent
        h = self._h
        if h is None:
            h = hash((self.a, self.b))
            object.__setattr__(self, "_h", h)
        return h

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return f"Num({self.a})"
        return f"Num({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*rt2"
        op = "-" if self.b < 0 else "+"
        return f"{self.a}{op}{abs(self.b)}*rt2"


def _sign2(a: Fraction, b: Fraction) -> int:
    """Sign of a + b*sqrt(2), exactly."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    a_neg = a < 0
    if a_neg == (b < 0):
        return -1 if a_neg else 1
    aa = a * a
    bb = 2 * b * b
    if aa == bb:
        return 0
    bigger_a = aa > bb
    return (1 if bigger_a else -1) if not a_neg else (-1 if bigger_a else 1)


def _coerce(x) -> Num:
    if isinstance(x, Num):
        return x
    return Num(_frac(x))


ZERO = Num(0)
ONE = Num(1)
RT2 = Num(0, 1)
HALF = Num(Fraction(1, 2))


def midpoint(x: Num, y: Num) -> Num:
    return (x + y) * HALF


def pow2(n: int) -> Fraction:
    """2**-n as an exact Fraction (n >= 0)."""
    return Fraction(1, 1 << n)
