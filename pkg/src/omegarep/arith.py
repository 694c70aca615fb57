"""Exact scalars: rationals (``fractions.Fraction``) and small prime fields."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

MAX_PRIME = 31

Rational = Fraction


class FieldMismatchError(TypeError):
    """Raised when operands from different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    """Element of the prime field F_p, p <= 31."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if not _is_prime(p) or p > MAX_PRIME:
            raise ValueError(f"modulus must be a prime <= {MAX_PRIME}, got {p}")
        self.p = p
        self.value = value % p

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} and F_{other.p} operands")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.p
        if isinstance(other, _RationalABC) and other.denominator == 1:
            return int(other) % self.p
        raise FieldMismatchError(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return FpElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FpElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FpElement(self._coerce(other), self.p).inverse()

    def __rtruediv__(self, other):
        return FpElement(self._coerce(other), self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpElement(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        try:
            return self.value == self._coerce(other)
        except FieldMismatchError:
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def inverse(a):
    if isinstance(a, FpElement):
        return a.inverse()
    if a == 0:
        raise ZeroDivisionError("division by zero")
    return 1 / Fraction(a)


def to_rational(x) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, int or Fraction into a canonical Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot read {type(x).__name__} as a rational")


def format_scalar(x) -> str:
    """Render ``p/q`` or ``p``; prime-field elements render as their residue."""
    if isinstance(x, FpElement):
        return str(x.value)
    return str(Fraction(x))


def to_field(x, p: int | None):
    """Map a rational into F_p (or leave it rational when ``p`` is None)."""
    if p is None:
        return to_rational(x)
    if isinstance(x, FpElement):
        if x.p != p:
            raise FieldMismatchError(f"F_{x.p} element used in F_{p}")
        return x
    q = to_rational(x)
    if q.denominator % p == 0:
        raise ZeroDivisionError(f"{q} has no image in F_{p}")
    return FpElement(q.numerator, p) / FpElement(q.denominator, p)
