"""Complex scalars in two modes: exact rational pairs and machine floats.

Every coefficient formula in this package is polynomial in the inputs, so
exact mode (Fraction real part, Fraction imaginary part) is closed under
all the arithmetic we ever perform and lets identity checks use literal
equality instead of tolerances. Float mode is plain ``complex``.
"""

from __future__ import annotations

import math
from fractions import Fraction

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


class QComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __repr__(self):
        return f"QComplex({self.re!s}, {self.im!s})"

    def __eq__(self, other):
        if isinstance(other, QComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self.re == Fraction(other.real) and self.im == Fraction(other.imag)
        if isinstance(other, float):
            return self.im == 0 and self.re == Fraction(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by exact complex zero")
        return QComplex((self.re * other.re + self.im * other.im) / d,
                        (self.im * other.re - self.re * other.im) / d)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QComplex(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __abs__(self):
        return math.sqrt(float(self.abs2()))

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def abs2(self):
        """Squared modulus as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def to_complex(self):
        return complex(self.re, self.im)


def _coerce(value):
    if isinstance(value, QComplex):
        return value
    if isinstance(value, (int, Fraction)):
        return QComplex(value)
    if isinstance(value, float):
        return QComplex(Fraction(value))
    if isinstance(value, complex):
        return QComplex(Fraction(value.real), Fraction(value.imag))
    return None


def as_scalar(value, mode):
    """Coerce ``value`` into the coefficient type of the given mode.

    Float inputs entering exact mode convert by their exact binary value.
    """
    if mode == FLOAT:
        if isinstance(value, QComplex):
            return value.to_complex()
        return complex(value)
    if mode == EXACT:
        coerced = _coerce(value)
        if coerced is None:
            raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")
        return coerced
    raise ValueError(f"unknown mode {mode!r}")


def as_real(value, mode):
    """Coerce a real parameter (rates, radii, the class parameter)."""
    if mode == FLOAT:
        return float(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact real")


def scalar_zero(mode):
    return QComplex(0) if mode == EXACT else 0j


def scalar_one(mode):
    return QComplex(1) if mode == EXACT else complex(1.0)


def scalar_is_zero(value):
    if isinstance(value, QComplex):
        return value.is_zero()
    return value == 0


def to_complex(value):
    if isinstance(value, QComplex):
        return value.to_complex()
    return complex(value)


def rational_sqrt(q):
    """Exact square root of a Fraction, or None when it is irrational."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def maybe_exact_abs(value):
    """Modulus of a scalar; exact Fraction when it happens to be rational."""
    if isinstance(value, QComplex):
        s = value.abs2()
        root = rational_sqrt(s)
        return root if root is not None else math.sqrt(float(s))
    if isinstance(value, (int, Fraction)):
        return abs(value)
    return abs(value)
