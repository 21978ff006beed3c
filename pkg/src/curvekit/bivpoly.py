"""Bivariate integer polynomials in x and y.

Stored sparsely as {(i, j): c} for c * x**i * y**j.  Provides the ring
operations, content/primitive splitting with respect to y, exact division,
a primitive-PRS gcd, and the substitutions the curve analyses need.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from . import upoly
from .upoly import IntPoly


class BivPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (i, j), c in dict(terms).items():
                if c:
                    self.terms[(i, j)] = c

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "BivPoly":
        return BivPoly()

    @staticmethod
    def const(c: int) -> "BivPoly":
        return BivPoly({(0, 0): c})

    @staticmethod
    def var(name: str) -> "BivPoly":
        return BivPoly({(1, 0) if name == "x" else (0, 1): 1})

    @staticmethod
    def from_y_coeffs(coeffs: Iterable[IntPoly]) -> "BivPoly":
        terms = {}
        for j, c in enumerate(coeffs):
            for i, a in enumerate(c):
                if a:
                    terms[(i, j)] = a
        return BivPoly(terms)

    @staticmethod
    def from_x_coeffs(coeffs: Iterable[IntPoly]) -> "BivPoly":
        terms = {}
        for i, c in enumerate(coeffs):
            for j, a in enumerate(c):
                if a:
                    terms[(i, j)] = a
        return BivPoly(terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def coeffs_wrt_y(self) -> list[IntPoly]:
        """List of x-polynomials, index = power of y."""
        out = [[] for _ in range(self.deg_y() + 1)]
        for (i, j), c in self.terms.items():
            col = out[j]
            col.extend([0] * (i + 1 - len(col)))
            col[i] = c
        return [upoly.trim(c) for c in out]

    def coeffs_wrt_x(self) -> list[IntPoly]:
        return self.swap().coeffs_wrt_y()

    def lead_coeff_y(self) -> IntPoly:
        cs = self.coeffs_wrt_y()
        return cs[-1] if cs else []

    def __eq__(self, other) -> bool:
        return isinstance(other, BivPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"BivPoly({self.terms!r})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "BivPoly") -> "BivPoly":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return BivPoly(terms)

    def __sub__(self, other: "BivPoly") -> "BivPoly":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) - c
        return BivPoly(terms)

    def __neg__(self) -> "BivPoly":
        return BivPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "BivPoly") -> "BivPoly":
        terms = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return BivPoly(terms)

    def scale(self, c: int) -> "BivPoly":
        if c == 0:
            return BivPoly()
        return BivPoly({k: a * c for k, a in self.terms.items()})

    def pow(self, k: int) -> "BivPoly":
        out = BivPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    # -- calculus & substitutions ------------------------------------------

    def diff(self, var: str) -> "BivPoly":
        terms = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i:
                terms[(i - 1, j)] = terms.get((i - 1, j), 0) + i * c
            elif var == "y" and j:
                terms[(i, j - 1)] = terms.get((i, j - 1), 0) + j * c
        return BivPoly(terms)

    def swap(self) -> "BivPoly":
        return BivPoly({(j, i): c for (i, j), c in self.terms.items()})

    def shear(self, s: int) -> "BivPoly":
        """Substitute x -> x + s*y."""
        xs = BivPoly.var("x") + BivPoly.var("y").scale(s)
        powers = [BivPoly.const(1)]
        for _ in range(self.deg_x()):
            powers.append(powers[-1] * xs)
        out = BivPoly()
        for (i, j), c in self.terms.items():
            out = out + powers[i].scale(c) * BivPoly({(0, j): 1})
        return out

    def eval_fraction(self, x: Fraction, y: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs_wrt_y()):
            acc = acc * y + upoly.eval_fraction(c, x)
        return acc

    def fiber_at_fraction(self, q: Fraction) -> list[Fraction]:
        """Coefficients in y of f(q, y)."""
        q = Fraction(q)
        return [upoly.eval_fraction(c, q) for c in self.coeffs_wrt_y()]

    def horizontal_at_fraction(self, q: Fraction) -> list[Fraction]:
        """Coefficients in x of f(x, q)."""
        return self.swap().fiber_at_fraction(q)

    def content_int(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    # -- content / primitive part with respect to y --------------------------

    def content_y(self, gcd_fn=None) -> IntPoly:
        """gcd in Z[x] of the y-coefficients, integer content included."""
        if gcd_fn is None:
            from .modpoly import int_gcd_uni
            gcd_fn = int_gcd_uni
        cs = [c for c in self.coeffs_wrt_y() if c]
        if not cs:
            return []
        g = upoly.primitive(cs[0])
        for c in cs[1:]:
            if upoly.degree(g) == 0:
                break
            g = gcd_fn(g, c)
        if upoly.degree(g) == 0:
            g = [1]
        return upoly.scale(g, self.content_int())

    def div_uni_x(self, d: IntPoly) -> "BivPoly":
        """Exact division by a polynomial in x alone."""
        out = []
        for c in self.coeffs_wrt_y():
            if not c:
                out.append([])
                continue
            q = upoly.divexact(c, d)
            if q is None:
                raise ArithmeticError("inexact division by x-content")
            out.append(q)
        return BivPoly.from_y_coeffs(out)


def divexact_biv(f: BivPoly, g: BivPoly) -> BivPoly:
    """Exact quotient f/g in Z[x,y]; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError
    if f.is_zero():
        return BivPoly()
    if g.deg_y() == 0:
        return f.div_uni_x(g.coeffs_wrt_y()[0])
    fc = f.coeffs_wrt_y()
    gc = g.coeffs_wrt_y()
    qn = len(fc) - len(gc)
    if qn < 0:
        raise ArithmeticError("inexact bivariate division")
    quot = [[] for _ in range(qn + 1)]
    rem = [list(c) for c in fc]
    glead = gc[-1]
    for k in range(qn, -1, -1):
        top = upoly.trim(list(rem[k + len(gc) - 1]))
        if not top:
            quot[k] = []
            continue
        q = upoly.divexact(top, glead)
        if q is None:
            raise ArithmeticError("inexact bivariate division")
        quot[k] = q
        for j, gcj in enumerate(gc):
            rem[k + j] = upoly.sub(rem[k + j], upoly.mul(q, gcj))
    if any(upoly.trim(list(r)) for r in rem[: len(gc) - 1]):
        raise ArithmeticError("inexact bivariate division")
    return BivPoly.from_y_coeffs(quot)


def _pseudo_rem_y(f: BivPoly, g: BivPoly) -> BivPoly:
    """Pseudo-remainder of f by g with respect to y."""
    fc = [list(c) for c in f.coeffs_wrt_y()]
    gc = g.coeffs_wrt_y()
    dg = len(gc) - 1
    lead = gc[-1]
    while len(fc) - 1 >= dg and any(upoly.trim(list(c)) for c in fc):
        while fc and not upoly.trim(list(fc[-1])):
            fc.pop()
        if len(fc) - 1 < dg:
            break
        top = fc[-1]
        k = len(fc) - 1 - dg
        fc = [upoly.mul(c, lead) for c in fc]
        for j, gcj in enumerate(gc):
            fc[k + j] = upoly.sub(fc[k + j], upoly.mul(top, gcj))
        fc.pop()
    return BivPoly.from_y_coeffs(fc)


def gcd_biv(f: BivPoly, g: BivPoly) -> BivPoly:
    """Primitive gcd in Z[x,y] (positive integer content convention)."""
    from .modpoly import int_gcd_uni
    if f.is_zero():
        return _normalize_sign(g)
    if g.is_zero():
        return _normalize_sign(f)
    if f.deg_y() == 0 and g.deg_y() == 0:
        return BivPoly.from_y_coeffs(
            [int_gcd_uni(f.coeffs_wrt_y()[0], g.coeffs_wrt_y()[0])])
    cf = f.content_y()
    cg = g.content_y()
    cont = int_gcd_uni(cf, cg)
    pf = f.div_uni_x(cf)
    pg = g.div_uni_x(cg)
    if pf.deg_y() < pg.deg_y():
        pf, pg = pg, pf
    while not pg.is_zero() and pg.deg_y() > 0:
        r = _pseudo_rem_y(pf, pg)
        if r.is_zero():
            break
        r = r.div_uni_x(r.content_y())
        pf, pg = pg, r
    if pg.is_zero():
        pp = pf.div_uni_x(pf.content_y())
    elif pg.deg_y() == 0:
        pp = BivPoly.const(1)
    else:
        pp = pg.div_uni_x(pg.content_y())
    out = pp * BivPoly.from_y_coeffs([cont])
    return _normalize_sign(out)


def _normalize_sign(f: BivPoly) -> BivPoly:
    if f.is_zero():
        return f
    key = max(f.terms)
    if f.terms[key] < 0:
        return -f
    return f


def is_squarefree_biv(f: BivPoly) -> bool:
    """Square-freeness over Q[x,y], via gcds with both partials."""
    if f.is_zero():
        return False
    g = gcd_biv(f, f.diff("x"))
    g = gcd_biv(g, f.diff("y"))
    return g.total_degree() == 0


def square_part(f: BivPoly) -> BivPoly:
    """gcd(f, f_x, f_y): nonconstant exactly when f has a repeated factor."""
    g = gcd_biv(f, f.diff("x"))
    return gcd_biv(g, f.diff("y"))
