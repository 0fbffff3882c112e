"""Exact arithmetic in the Gaussian rationals Q(i)."""

from __future__ import annotations

from numbers import Rational

from gmpy2 import mpq

from .errors import DivisionByZero

__all__ = ["GaussianRational", "ZERO", "ONE", "I", "as_gaussian"]

_MPQ0 = mpq(0)


class GaussianRational:
    """The number ``re + im*i`` with ``re`` and ``im`` exact rationals.

    Instances are immutable. Both parts are stored as reduced ``gmpy2.mpq``
    values, so equal numbers always have equal representations. Ints,
    ``fractions.Fraction`` and ``mpq`` operands are accepted everywhere.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "re", mpq(re))
        object.__setattr__(self, "im", mpq(im))

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # -- predicates -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """Squared absolute value ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if not self:
            raise DivisionByZero("division by zero in Q(i)")
        n = self.norm()
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- formatting -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self) -> str:
        """Render in the expression grammar, e.g. ``3/2 - 5*i`` or ``-i``."""
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ipart = "i"
        elif im == -1:
            ipart = "-i"
        else:
            ipart = f"{im}*i"
        if not re:
            return ipart
        if ipart.startswith("-"):
            return f"{re} - {ipart[1:]}"
        return f"{re} + {ipart}"

    def to_json(self) -> str:
        return str(self)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Rational)):
        return GaussianRational._raw(mpq(value), _MPQ0)
    return NotImplemented


def as_gaussian(value) -> GaussianRational:
    """Convert an int, rational, or complex (exactly, via its binary value) to Q(i)."""
    if isinstance(value, complex):
        return GaussianRational(mpq(value.real), mpq(value.imag))
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
    return out


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
