"""Real intervals with dyadic endpoints, complex boxes and discs.

All interval operations are conservative: the exact range of the operation
over the inputs is always contained in the result.  With no precision cap
the ring operations are exact; ``outward(bits)`` trims mantissas with
outward rounding when growth needs to be contained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .dyadic import Dyadic, ZERO, div_down, div_up, frac_cmp, sqrt_up


@dataclass(frozen=True, slots=True)
class RealInterval:
    lo: Dyadic
    hi: Dyadic

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def point(v: Dyadic) -> "RealInterval":
        return RealInterval(v, v)

    @staticmethod
    def from_int(n: int) -> "RealInterval":
        d = Dyadic(n)
        return RealInterval(d, d)

    @staticmethod
    def hull(q: Fraction, bits: int = 64) -> "RealInterval":
        """Tight dyadic enclosure of a rational."""
        den = q.denominator
        if not den & (den - 1):
            return RealInterval.point(Dyadic.from_fraction(q))
        lo = Dyadic((q.numerator << bits) // den, -bits)
        hi = Dyadic(-((-q.numerator << bits) // den), -bits)
        return RealInterval(lo, hi)

    # -- queries -----------------------------------------------------------

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def midpoint(self) -> Dyadic:
        return (self.lo + self.hi).half()

    def radius(self) -> Dyadic:
        return (self.hi - self.lo).half()

    def contains_zero(self) -> bool:
        return self.lo.sign() <= 0 <= self.hi.sign()

    def contains(self, v: Dyadic) -> bool:
        return self.lo <= v <= self.hi

    def contains_fraction(self, q: Fraction) -> bool:
        return frac_cmp(self.lo, q) <= 0 <= frac_cmp(self.hi, q)

    def strictly_contains(self, other: "RealInterval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def encloses(self, other: "RealInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def mag(self) -> Dyadic:
        """Upper bound for |t| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Dyadic:
        """Lower bound for |t| over the interval (0 if it straddles zero)."""
        if self.contains_zero():
            return ZERO
        return min(abs(self.lo), abs(self.hi))

    def sign(self) -> int:
        """Definite sign of the whole interval, or 0 when undecided/zero."""
        if self.lo.sign() > 0:
            return 1
        if self.hi.sign() < 0:
            return -1
        return 0

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "RealInterval") -> "RealInterval":
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RealInterval(min(cands), max(cands))

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo)

    def add_scalar(self, v: Dyadic) -> "RealInterval":
        return RealInterval(self.lo + v, self.hi + v)

    def mul_scalar(self, v: Dyadic) -> "RealInterval":
        if v.sign() >= 0:
            return RealInterval(self.lo * v, self.hi * v)
        return RealInterval(self.hi * v, self.lo * v)

    def div_scalar(self, v: Dyadic, bits: int) -> "RealInterval":
        """Conservative division by an exact nonzero dyadic."""
        if v.sign() > 0:
            return RealInterval(div_down(self.lo, v, bits), div_up(self.hi, v, bits))
        if v.sign() < 0:
            return RealInterval(div_down(self.hi, -v, bits), div_up(self.lo, -v, bits)).__neg__()
        raise ZeroDivisionError

    def div(self, other: "RealInterval", bits: int) -> "RealInterval":
        """Conservative division by an interval excluding zero."""
        if other.contains_zero():
            raise ZeroDivisionError("divisor interval contains zero")
        los, his = [], []
        for n in (self.lo, self.hi):
            for d in (other.lo, other.hi):
                if d.sign() > 0:
                    los.append(div_down(n, d, bits))
                    his.append(div_up(n, d, bits))
                else:
                    los.append(-div_up(n, -d, bits))
                    his.append(-div_down(n, -d, bits))
        return RealInterval(min(los), max(his))

    def outward(self, bits: int) -> "RealInterval":
        return RealInterval(self.lo.round_down(bits), self.hi.round_up(bits))

    def union(self, other: "RealInterval") -> "RealInterval":
        return RealInterval(min(self.lo, other.lo), max(self.hi, other.hi))


def interval_eval_uni(coeffs: Sequence, x: RealInterval,
                      bits: Optional[int] = None) -> RealInterval:
    """Horner evaluation of a polynomial (lowest degree first) over an interval.

    Coefficients may be ints, Fractions, Dyadics or RealIntervals.  The result
    contains {p(t) : t in x}; with ``bits`` set, each step rounds outward.
    """
    acc = RealInterval.point(ZERO)
    for c in reversed(list(coeffs)):
        acc = acc * x + _as_interval(c)
        if bits is not None:
            acc = acc.outward(bits)
    return acc


def _as_interval(c) -> RealInterval:
    if isinstance(c, RealInterval):
        return c
    if isinstance(c, Dyadic):
        return RealInterval.point(c)
    if isinstance(c, int):
        return RealInterval.point(Dyadic(c))
    if isinstance(c, Fraction):
        return RealInterval.hull(c)
    raise TypeError(f"cannot coerce {c!r} to interval")


def interval_eval_biv(f, box: tuple[RealInterval, RealInterval],
                      bits: Optional[int] = None) -> RealInterval:
    """Conservative enclosure of a bivariate integer polynomial over a box."""
    bx, by = box
    ycoeffs = [interval_eval_uni(c, bx, bits) for c in f.coeffs_wrt_y()]
    return interval_eval_uni(ycoeffs, by, bits)


@dataclass(frozen=True, slots=True)
class ComplexBox:
    re: RealInterval
    im: RealInterval

    def __add__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re * other.re - self.im * other.im,
                          self.re * other.im + self.im * other.re)

    def __neg__(self) -> "ComplexBox":
        return ComplexBox(-self.re, -self.im)

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def outward(self, bits: int) -> "ComplexBox":
        return ComplexBox(self.re.outward(bits), self.im.outward(bits))

    def mag_sq(self) -> RealInterval:
        sq_re = self.re * self.re
        sq_im = self.im * self.im
        lo = (self.re.mig() * self.re.mig()) + (self.im.mig() * self.im.mig())
        hi = sq_re.hi + sq_im.hi
        return RealInterval(lo, hi)

    def mag_upper(self, bits: int = 64) -> Dyadic:
        return sqrt_up(self.mag_sq().hi, bits)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def div(self, other: "ComplexBox", bits: int) -> "ComplexBox":
        """Conservative complex division; |other| must be bounded away from 0."""
        den = other.mag_sq()
        if den.lo.sign() <= 0:
            raise ZeroDivisionError("divisor box may contain zero")
        num = self * other.conj()
        return ComplexBox(num.re.div(den, bits), num.im.div(den, bits))

    @staticmethod
    def point(re: Dyadic, im: Dyadic) -> "ComplexBox":
        return ComplexBox(RealInterval.point(re), RealInterval.point(im))


@dataclass(frozen=True, slots=True)
class ComplexDisc:
    center_re: Dyadic
    center_im: Dyadic
    radius: Dyadic

    def __post_init__(self):
        if self.radius.sign() < 0:
            raise ValueError("negative radius")

    def conj(self) -> "ComplexDisc":
        return ComplexDisc(self.center_re, -self.center_im, self.radius)

    def intersects(self, other: "ComplexDisc") -> bool:
        """Exact test: closed discs meet iff |c1-c2|^2 <= (r1+r2)^2."""
        dre = self.center_re - other.center_re
        dim = self.center_im - other.center_im
        rr = self.radius + other.radius
        return (dre * dre + dim * dim) <= rr * rr

    def contained_in(self, other: "ComplexDisc") -> bool:
        """Exact test: self subset of other iff |c1-c2| + r1 <= r2."""
        if self.radius > other.radius:
            return False
        dre = self.center_re - other.center_re
        dim = self.center_im - other.center_im
        gap = other.radius - self.radius
        return (dre * dre + dim * dim) <= gap * gap

    def meets_real_axis(self) -> bool:
        return abs(self.center_im) <= self.radius

    def real_projection(self) -> RealInterval:
        return RealInterval(self.center_re - self.radius, self.center_re + self.radius)


def disc_to_box(d: ComplexDisc) -> ComplexBox:
    """Tight axis-aligned box around a closed disc (side = 2*radius)."""
    return ComplexBox(
        RealInterval(d.center_re - d.radius, d.center_re + d.radius),
        RealInterval(d.center_im - d.radius, d.center_im + d.radius),
    )
