"""Exact dyadic numbers: integers scaled by powers of two.

Addition, subtraction and multiplication are exact; halving and other
divisions by powers of two are exact as well.  General division is not
provided -- callers that need it go through directed-rounding helpers with
an explicit precision, so every rounding site is visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass(frozen=True, slots=True)
class Dyadic:
    """Value ``man * 2**exp`` in canonical form (odd mantissa, or 0 with exp 0)."""

    man: int
    exp: int = 0

    def __post_init__(self):
        man, exp = self.man, self.exp
        if man == 0:
            exp = 0
        else:
            shift = (man & -man).bit_length() - 1
            if shift:
                man >>= shift
                exp += shift
        object.__setattr__(self, "man", man)
        object.__setattr__(self, "exp", exp)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_fraction(q: Fraction) -> "Dyadic":
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return Dyadic(q.numerator, -(den.bit_length() - 1))

    # -- queries -----------------------------------------------------------

    def as_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def sign(self) -> int:
        return (self.man > 0) - (self.man < 0)

    def is_zero(self) -> bool:
        return self.man == 0

    def bit_size(self) -> int:
        return self.man.bit_length()

    def __float__(self) -> float:
        try:
            return self.man * 2.0**self.exp
        except OverflowError:
            return float(self.as_fraction())

    def __repr__(self) -> str:
        return f"Dyadic({self.man}, {self.exp})"

    # -- exact arithmetic ----------------------------------------------------

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = min(self.exp, other.exp)
        return Dyadic((self.man << (self.exp - e)) + (other.man << (other.exp - e)), e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = min(self.exp, other.exp)
        return Dyadic((self.man << (self.exp - e)) - (other.man << (other.exp - e)), e)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.man * other.man, self.exp + other.exp)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.man, self.exp)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.man), self.exp)

    def scale2(self, k: int) -> "Dyadic":
        """Exact multiplication by 2**k."""
        if self.man == 0:
            return self
        return Dyadic(self.man, self.exp + k)

    def half(self) -> "Dyadic":
        return self.scale2(-1)

    # -- exact comparisons -----------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- directed rounding -------------------------------------------------

    def round_down(self, bits: int) -> "Dyadic":
        """Largest dyadic <= self whose mantissa fits in ``bits`` bits."""
        excess = self.man.bit_length() - bits
        if excess <= 0:
            return self
        return Dyadic(self.man >> excess, self.exp + excess)

    def round_up(self, bits: int) -> "Dyadic":
        excess = self.man.bit_length() - bits
        if excess <= 0:
            return self
        return Dyadic(-((-self.man) >> excess), self.exp + excess)


ZERO = Dyadic(0)
ONE = Dyadic(1)


def div_down(a: Dyadic, b: Dyadic, bits: int) -> Dyadic:
    """Dyadic lower bound on a/b with about ``bits`` significant bits; b > 0."""
    if b.sign() <= 0:
        raise ZeroDivisionError("divisor must be positive")
    if a.man == 0:
        return ZERO
    shift = bits + b.man.bit_length() - a.man.bit_length() + 2
    shift = max(shift, 0)
    num = a.man << shift
    q = num // b.man  # floor division keeps the bound one-sided
    return Dyadic(q, a.exp - b.exp - shift)


def div_up(a: Dyadic, b: Dyadic, bits: int) -> Dyadic:
    return -div_down(-a, b, bits)


def sqrt_up(a: Dyadic, bits: int) -> Dyadic:
    """Dyadic upper bound on sqrt(a); a >= 0."""
    if a.sign() < 0:
        raise ValueError("sqrt of negative dyadic")
    if a.man == 0:
        return ZERO
    m, e = a.man, a.exp
    shift = max(0, 2 * bits - m.bit_length())
    if (e - shift) % 2:
        shift += 1
    m <<= shift
    e -= shift
    r = isqrt(m)
    if r * r < m:
        r += 1
    return Dyadic(r, e // 2)


def sqrt_down(a: Dyadic, bits: int) -> Dyadic:
    if a.sign() < 0:
        raise ValueError("sqrt of negative dyadic")
    if a.man == 0:
        return ZERO
    m, e = a.man, a.exp
    shift = max(0, 2 * bits - m.bit_length())
    if (e - shift) % 2:
        shift += 1
    m <<= shift
    e -= shift
    return Dyadic(isqrt(m), e // 2)


def frac_cmp(d: Dyadic, q: Fraction) -> int:
    """Exact comparison of a dyadic with a rational: sign of d - q."""
    lhs = d.man * q.denominator
    if d.exp >= 0:
        lhs <<= d.exp
        rhs = q.numerator
    else:
        rhs = q.numerator << -d.exp
    return (lhs > rhs) - (lhs < rhs)
