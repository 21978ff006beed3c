"""Univariate polynomial algebra over the integers.

Polynomials are plain lists of ints (or Fractions where noted), lowest
degree first, with no trailing zeros.  On top of the ring helpers this
module provides square-free decomposition, real root isolation by sign
variations, quadratic interval refinement of algebraic numbers, and the
Taylor-tail disc test used to certify root-free discs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .dyadic import Dyadic, ZERO, frac_cmp
from .intervals import RealInterval

IntPoly = list  # list[int], lowest degree first


# ---------------------------------------------------------------------------
# ring helpers
# ---------------------------------------------------------------------------

def trim(p: IntPoly) -> IntPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: IntPoly) -> int:
    return len(p) - 1


def add(p: IntPoly, q: IntPoly) -> IntPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                 for i in range(n)])


def sub(p: IntPoly, q: IntPoly) -> IntPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                 for i in range(n)])


def mul(p: IntPoly, q: IntPoly) -> IntPoly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p: IntPoly, c) -> IntPoly:
    if c == 0:
        return []
    return [a * c for a in p]


def neg(p: IntPoly) -> IntPoly:
    return [-a for a in p]


def pow_(p: IntPoly, k: int) -> IntPoly:
    out = [1]
    for _ in range(k):
        out = mul(out, p)
    return out


def derivative(p: IntPoly) -> IntPoly:
    return trim([i * p[i] for i in range(1, len(p))])


def content(p: IntPoly) -> int:
    g = 0
    for a in p:
        g = math.gcd(g, a)
    return g


def primitive(p: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if not p:
        return []
    c = content(p)
    if p[-1] < 0:
        c = -c
    return [a // c for a in p]


def divexact(p: IntPoly, d: IntPoly) -> Optional[IntPoly]:
    """Exact quotient p/d over the integers, or None if it does not divide."""
    if not d:
        raise ZeroDivisionError
    if not p:
        return []
    if len(p) < len(d):
        return None
    r = list(p)
    q = [0] * (len(p) - len(d) + 1)
    lead = d[-1]
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(d) - 1]
        if c % lead:
            return None
        c //= lead
        q[k] = c
        if c:
            for j, b in enumerate(d):
                r[k + j] -= c * b
    return trim(q) if not any(r[: len(d) - 1]) else None


def divmod_frac(p: Sequence, d: Sequence):
    """Quotient and remainder over the rationals."""
    p = [Fraction(a) for a in p]
    d = [Fraction(a) for a in d]
    while d and d[-1] == 0:
        d.pop()
    if not d:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(p) - len(d) + 1)
    r = list(p)
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(d):
            break
        c = r[-1] / d[-1]
        k = len(r) - len(d)
        q[k] = c
        for j, b in enumerate(d):
            r[k + j] -= c * b
        r.pop()
    return q, r


def clear_denominators(p: Sequence) -> IntPoly:
    """Scale a rational polynomial to integers (positive multiple)."""
    lcm = 1
    for a in p:
        a = Fraction(a)
        lcm = lcm * a.denominator // math.gcd(lcm, a.denominator)
    return trim([int(Fraction(a) * lcm) for a in p])


def eval_fraction(p: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(list(p)):
        acc = acc * x + a
    return acc


def eval_int(p: IntPoly, x: int) -> int:
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def eval_dyadic(p: IntPoly, x: Dyadic) -> Dyadic:
    """Exact value of an integer polynomial at a dyadic point."""
    if not p:
        return ZERO
    if x.exp >= 0:
        return Dyadic(eval_int(p, x.man << x.exp))
    k = -x.exp
    n = len(p) - 1
    acc = p[-1]
    for i in range(n - 1, -1, -1):
        acc = acc * x.man + (p[i] << (k * (n - i)))
    return Dyadic(acc, -k * n)


def sign_at(p: IntPoly, x: Fraction) -> int:
    """Exact sign of p at a rational point."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    acc = 0
    n = len(p) - 1
    for i in range(n, -1, -1):
        acc = acc * num + p[i] * den ** (n - i)
    return (acc > 0) - (acc < 0)


def taylor_shift(p: IntPoly, a: int) -> IntPoly:
    """p(x + a) by iterated Horner."""
    out = list(p)
    for i in range(len(p) - 1):
        for j in range(len(p) - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return trim(out)


def compose_linear(p: IntPoly, a_num: int, w_num: int, log2_den: int) -> IntPoly:
    """Integer coefficients of 2**(n*log2_den) * p((a_num + w_num*x) / 2**log2_den)."""
    n = degree(p)
    if n < 0:
        return []
    acc: IntPoly = [p[-1]]
    lin = [a_num, w_num]
    for i in range(n - 1, -1, -1):
        acc = mul(acc, lin)
        acc = add(acc, [p[i] << (log2_den * (n - i))])
    return acc


def sign_variations(coeffs: Sequence[int]) -> int:
    count = 0
    last = 0
    for c in coeffs:
        s = (c > 0) - (c < 0)
        if s and last and s != last:
            count += 1
        if s:
            last = s
    return count


def cauchy_bound_log2(p: IntPoly) -> int:
    """k with 2**k >= 1 + max|a_i|/|a_n|, so all roots satisfy |z| < 2**k."""
    if len(p) <= 1:
        return 0
    an = abs(p[-1])
    m = max(abs(a) for a in p[:-1])
    b = 1 + (m + an - 1) // an
    return max(1, b.bit_length())


# ---------------------------------------------------------------------------
# square-free decomposition (Yun)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquareFreeDecomposition:
    factors: tuple  # ((IntPoly-as-tuple, multiplicity), ...) primitive, lc > 0
    content: int

    def reconstruct(self) -> IntPoly:
        out = [self.content]
        for f, m in self.factors:
            out = mul(out, pow_(list(f), m))
        return out


def squarefree_decompose(p: IntPoly, gcd_fn=None) -> SquareFreeDecomposition:
    """Yun's square-free decomposition p = content * prod f_i^i."""
    if not p:
        raise ValueError("zero polynomial")
    if gcd_fn is None:
        from .modpoly import int_gcd_uni
        gcd_fn = int_gcd_uni
    if len(p) == 1:
        return SquareFreeDecomposition((), p[0])
    w = primitive(p)
    cont = p[-1] // w[-1] if w[-1] else 0
    dp = derivative(w)
    g = gcd_fn(w, dp)
    if degree(g) == 0:
        return SquareFreeDecomposition(((tuple(w), 1),), cont)
    factors = []
    v = _frac_div(w, g)
    u = _frac_div(dp, g)
    i = 1
    while len(v) > 1:
        d = _sub_frac(u, _derivative_frac(v))
        h = gcd_fn(clear_denominators(v), clear_denominators(d))
        if degree(h) > 0:
            factors.append((tuple(h), i))
        v, u = _frac_div(v, h), _frac_div(d, h)
        i += 1
    return SquareFreeDecomposition(tuple(factors), cont)


def _frac_div(p, d):
    q, r = divmod_frac(p, d)
    if any(r):
        raise ArithmeticError("inexact division in square-free decomposition")
    return q


def _sub_frac(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else Fraction(0)) -
           (q[i] if i < len(q) else Fraction(0)) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _derivative_frac(p):
    return [i * p[i] for i in range(1, len(p))]


# ---------------------------------------------------------------------------
# algebraic numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicNumber:
    """Real root of a square-free integer polynomial, bracketed by an interval.

    The bracket endpoints are never roots of the defining polynomial, except
    when ``exact`` is set, in which case the root is the stated rational and
    the interval is a tight enclosure of it.
    """

    poly: tuple          # square-free defining polynomial, primitive, lc > 0
    interval: RealInterval
    multiplicity: int = 1
    exact: Optional[Fraction] = None

    def width(self) -> Dyadic:
        return self.interval.width()

    def as_float(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return float(self.interval.midpoint())

    def as_fraction_approx(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return self.interval.midpoint().as_fraction()


# ---------------------------------------------------------------------------
# root isolation (sign-variation subdivision)
# ---------------------------------------------------------------------------

def _variations_on(p: IntPoly, a: Dyadic, b: Dyadic) -> int:
    """Sign-variation bound for the number of roots of p in (a, b)."""
    e = min(a.exp, b.exp, 0)
    a_num = a.man << (a.exp - e)
    b_num = b.man << (b.exp - e)
    n = degree(p)
    r = compose_linear(p, a_num, b_num - a_num, -e)
    r = r + [0] * (n + 1 - len(r))
    return sign_variations(taylor_shift(list(reversed(r)), 1))


def _interior_points(a: Dyadic, b: Dyadic):
    """Midpoint first, then deterministic dyadic jitters around it."""
    mid = (a + b).half()
    yield mid
    w = b - a
    for k in range(2, 64):
        yield mid + w.scale2(-k)
        yield mid - w.scale2(-k)


def descartes_isolate(p, check_squarefree: bool = True,
                      multiplicity: int = 1) -> list[AlgebraicNumber]:
    """Isolate all real roots of a square-free polynomial.

    Accepts integer or rational coefficients; returns disjoint brackets in
    ascending order, each containing exactly one real root.
    """
    if any(isinstance(c, Fraction) for c in p):
        p = clear_denominators(p)
    p = primitive(trim(list(p)))
    if not p:
        raise ValueError("zero polynomial")
    if check_squarefree:
        from .modpoly import int_gcd_uni
        if degree(int_gcd_uni(p, derivative(p))) > 0:
            raise ValueError("polynomial is not square-free")
    roots: list[AlgebraicNumber] = []
    work = list(p)
    if degree(work) <= 0:
        return []
    if work[0] == 0:
        i = next(i for i, c in enumerate(work) if c)
        work = work[i:]
        roots.append(AlgebraicNumber(tuple(p), RealInterval.point(ZERO),
                                     multiplicity, exact=Fraction(0)))
    if degree(work) > 0:
        # brackets carry the zero-root-free polynomial so that bracket
        # endpoints are never roots of their own defining polynomial
        defining = tuple(primitive(work))
        k = cauchy_bound_log2(work)
        bound = Dyadic(1, k)
        stack = [(-bound, bound)]
        while stack:
            a, b = stack.pop()
            v = _variations_on(work, a, b)
            if v == 0:
                continue
            if v == 1:
                roots.append(AlgebraicNumber(defining, RealInterval(a, b),
                                             multiplicity))
                continue
            for m in _interior_points(a, b):
                if eval_dyadic(work, m).sign() != 0:
                    break
            else:  # pragma: no cover
                raise ArithmeticError("no non-root subdivision point found")
            stack.append((a, m))
            stack.append((m, b))
    roots.sort(key=lambda r: r.interval.midpoint().as_fraction())
    return _make_disjoint(roots)


def isolate_decomposition(dec: SquareFreeDecomposition) -> list[AlgebraicNumber]:
    """All real roots of a decomposed polynomial, sorted, pairwise disjoint.

    Each root carries its multiplicity in the original polynomial.
    """
    roots: list[AlgebraicNumber] = []
    for f, m in dec.factors:
        roots.extend(descartes_isolate(list(f), check_squarefree=False,
                                       multiplicity=m))
    roots.sort(key=lambda r: r.interval.midpoint().as_fraction())
    return _make_disjoint(roots)


def _make_disjoint(roots: list[AlgebraicNumber]) -> list[AlgebraicNumber]:
    changed = True
    while changed:
        changed = False
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            if a.interval.overlaps(b.interval):
                target = max(a.width(), b.width()).half().half()
                if target.is_zero():
                    target = Dyadic(1, -80)
                roots[i] = qir_refine(a, target)
                roots[i + 1] = qir_refine(b, target)
                changed = True
        if changed:
            roots.sort(key=lambda r: r.interval.midpoint().as_fraction())
    return roots


# ---------------------------------------------------------------------------
# quadratic interval refinement
# ---------------------------------------------------------------------------

def qir_refine(a: AlgebraicNumber, target: Dyadic) -> AlgebraicNumber:
    """Shrink the isolating interval to width <= target.

    Secant-guessed subdivision on a power-of-two grid, squaring the grid on
    success and falling back to bisection on a miss; endpoints stay dyadic.
    Exact rational roots hit on the grid collapse the bracket.
    """
    if a.width() <= target:
        return a
    if a.exact is not None:
        bits = max(4, 2 - target.exp)
        return replace(a, interval=RealInterval.hull(a.exact, bits))
    p = list(a.poly)
    lo, hi = a.interval.lo, a.interval.hi
    s_lo = eval_dyadic(p, lo).sign()
    n_log = 2  # grid has 2**n_log cells
    while (hi - lo) > target:
        v_lo, v_hi = eval_dyadic(p, lo), eval_dyadic(p, hi)
        grid = 1 << n_log
        idx = _grid_index(abs(v_lo), abs(v_lo) + abs(v_hi), grid)
        step = (hi - lo).scale2(-n_log)
        x1 = lo + Dyadic(step.man * idx, step.exp)
        x2 = lo + Dyadic(step.man * (idx + 1), step.exp)
        s1 = eval_dyadic(p, x1).sign()
        if s1 == 0:
            return _exact_hit(a, x1)
        s2 = eval_dyadic(p, x2).sign()
        if s2 == 0:
            return _exact_hit(a, x2)
        if s1 != s2:
            lo, hi, s_lo = x1, x2, s1
            n_log = min(n_log * 2, 64)
            continue
        n_log = max(2, n_log // 2)
        mid = (lo + hi).half()
        sm = eval_dyadic(p, mid).sign()
        if sm == 0:
            return _exact_hit(a, mid)
        if sm == s_lo:
            lo = mid
        else:
            hi = mid
    return replace(a, interval=RealInterval(lo, hi))


def _exact_hit(a: AlgebraicNumber, v: Dyadic) -> AlgebraicNumber:
    return replace(a, interval=RealInterval.point(v), exact=v.as_fraction())


def _grid_index(num: Dyadic, den: Dyadic, grid: int) -> int:
    """floor(grid * num/den) clamped to [0, grid-2]."""
    if den.is_zero():
        return 0
    e = min(num.exp, den.exp)
    n = num.man << (num.exp - e)
    d = den.man << (den.exp - e)
    return max(0, min(grid - 2, (n * grid) // d))


# ---------------------------------------------------------------------------
# exact comparisons
# ---------------------------------------------------------------------------

def refine_fraction_away(a: AlgebraicNumber, q: Fraction) -> AlgebraicNumber:
    """Refine until q is outside the bracket, or a is detected equal to q."""
    if a.exact is not None:
        return a
    q = Fraction(q)
    while a.interval.contains_fraction(q):
        if sign_at(list(a.poly), q) == 0:
            return replace(a, exact=q, interval=RealInterval.hull(q, 80))
        a = qir_refine(a, a.width().half().half())
    return a


def algnum_cmp_fraction(a: AlgebraicNumber, q: Fraction) -> int:
    """Exact sign of a - q."""
    q = Fraction(q)
    if a.exact is None:
        a = refine_fraction_away(a, q)
    if a.exact is not None:
        return (a.exact > q) - (a.exact < q)
    return 1 if frac_cmp(a.interval.lo, q) >= 0 else -1


def is_root_of(a: AlgebraicNumber, p: IntPoly, gcd_fn=None) -> bool:
    """Exact test whether p(a) = 0, via a gcd with the defining polynomial."""
    if not p:
        return True
    if a.exact is not None:
        return sign_at(p, a.exact) == 0
    if gcd_fn is None:
        from .modpoly import int_gcd_uni
        gcd_fn = int_gcd_uni
    g = gcd_fn(list(a.poly), trim(list(p)))
    if degree(g) <= 0:
        return False
    # g divides the square-free defining polynomial, so g has at most the one
    # root a inside the bracket and the endpoints are not roots of g
    s_lo = sign_at(g, a.interval.lo.as_fraction())
    s_hi = sign_at(g, a.interval.hi.as_fraction())
    return s_lo != s_hi


def mult_in_decomposition(a: AlgebraicNumber, dec: SquareFreeDecomposition) -> int:
    """Multiplicity of a as a root of the decomposed polynomial."""
    total = 0
    for f, m in dec.factors:
        if is_root_of(a, list(f)):
            total += m
    return total


def algnum_eq(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Exact equality of two algebraic numbers."""
    if a.exact is not None and b.exact is not None:
        return a.exact == b.exact
    if not a.interval.overlaps(b.interval):
        return False
    if a.exact is not None:
        return is_root_of(b, clear_denominators([-a.exact, Fraction(1)]))
    if b.exact is not None:
        return is_root_of(a, clear_denominators([-b.exact, Fraction(1)]))
    from .modpoly import int_gcd_uni
    g = int_gcd_uni(list(a.poly), list(b.poly))
    if degree(g) <= 0 or not is_root_of(a, g) or not is_root_of(b, g):
        return False
    g_roots = descartes_isolate(g, check_squarefree=False)
    return _locate_root(a, g_roots) == _locate_root(b, g_roots)


def _locate_root(a: AlgebraicNumber, roots: list[AlgebraicNumber]) -> int:
    """Index of the isolated root (of a divisor of a.poly) that equals a."""
    while True:
        if a.exact is not None:
            for j, r in enumerate(roots):
                if r.exact is not None and r.exact == a.exact:
                    return j
                if r.exact is None and r.interval.contains_fraction(a.exact) \
                        and sign_at(list(r.poly), a.exact) == 0:
                    return j
            raise ArithmeticError("exact value not among candidate roots")
        for j, r in enumerate(roots):
            if r.interval.encloses(a.interval):
                return j
        a = qir_refine(a, a.width().half().half())


def algnum_cmp(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """Total order on algebraic numbers: -1, 0 or 1."""
    if algnum_eq(a, b):
        return 0
    while a.interval.overlaps(b.interval):
        a = qir_refine(a, _shrink_target(a))
        b = qir_refine(b, _shrink_target(b))
    return -1 if a.interval.hi < b.interval.lo else 1


def _shrink_target(a: AlgebraicNumber) -> Dyadic:
    w = a.width()
    return w.half().half() if not w.is_zero() else w


# ---------------------------------------------------------------------------
# Taylor-tail disc test
# ---------------------------------------------------------------------------

def taylor_disc_test(p: IntPoly, m: Dyadic, r: Dyadic, k: Fraction) -> bool:
    """True only if |p(m)| > k * sum_{j>=1} |p^(j)(m)/j!| r^j, checked exactly.

    With k >= 1 a True answer certifies that the closed disc of radius r
    around m contains no root of p; applied to p' with k >= sqrt(2) (3/2 in
    this codebase) it certifies that the disc holds at most one root of p.
    """
    k = Fraction(k)
    if r.sign() < 0 or k < 1:
        raise ValueError("need r >= 0 and k >= 1")
    if not p:
        return False
    e = min(m.exp, 0)
    u = m.man << (m.exp - e)
    n = degree(p)
    scaled = [p[i] << (-e * (n - i)) for i in range(n + 1)]
    tay = taylor_shift(scaled, u)
    tay = tay + [0] * (n + 1 - len(tay))
    # Taylor coefficient of p at m: c_j = tay[j] * 2**(e*(n-j))
    head = abs(Dyadic(tay[0], e * n))
    tail = ZERO
    rp = r
    for j in range(1, n + 1):
        if tay[j]:
            tail = tail + abs(Dyadic(tay[j], e * (n - j))) * rp
        rp = rp * r
    diff = Dyadic(head.man * k.denominator, head.exp) - \
        Dyadic(tail.man * k.numerator, tail.exp)
    return diff.sign() > 0
