"""Modular symbolic engine: resultants, gcds and subresultant profiles.

Bivariate resultants follow the classical homomorphism pipeline (reduce mod
word-size primes, evaluate, compute univariate resultants, interpolate, then
Chinese-remainder the coefficients back); integer polynomial gcds use the
modular gcd scheme with exact trial-division verification; per-prime
subresultant degree profiles feed the curve analyses.  Everything here is
deterministic given the seed that orders the prime table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd as int_gcd, isqrt

from . import upoly
from .bivpoly import BivPoly
from .upoly import IntPoly


class UnluckyPrime(Exception):
    """Raised when a chosen prime degenerates the leading coefficients."""


# ---------------------------------------------------------------------------
# prime table
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=8)
def prime_table(bits: int = 31, count: int = 4096) -> tuple:
    """The ``count`` largest primes below 2**bits, descending."""
    out = []
    n = (1 << bits) - 1
    while len(out) < count and n > 2:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def prime_stream(seed: int = 0, bits: int = 31):
    """Deterministic enumeration of the prime table in seeded order."""
    table = list(prime_table(bits))
    random.Random(seed).shuffle(table)
    return iter(table)


# ---------------------------------------------------------------------------
# polynomials over Z_p (raw kernels work on coefficient lists, low degree first)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModPoly:
    p: int
    coeffs: tuple  # residues in [0, p), lowest degree first, no trailing zeros

    @staticmethod
    def make(coeffs, p: int) -> "ModPoly":
        return ModPoly(p, tuple(_zp_trim([c % p for c in coeffs])))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs


def _zp_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _zp_rem(a: list, b: list, p: int) -> list:
    r = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(r) >= len(b):
        c = r[-1] * inv % p
        if c:
            k = len(r) - len(b)
            for j, bj in enumerate(b):
                r[k + j] = (r[k + j] - c * bj) % p
        r.pop()
    return _zp_trim(r)


def _zp_gcd(a: list, b: list, p: int) -> list:
    a, b = _zp_trim(list(a)), _zp_trim(list(b))
    while b:
        a, b = b, _zp_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _zp_eval(c: list, t: int, p: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc * t + a) % p
    return acc


def _zp_resultant(a: list, b: list, p: int) -> int:
    """Resultant of two univariate polynomials mod p, by remainder sequences."""
    a, b = _zp_trim(list(a)), _zp_trim(list(b))
    if not a or not b:
        return 0
    res = 1
    if len(a) < len(b):
        if (len(a) - 1) * (len(b) - 1) % 2:
            res = p - 1
        a, b = b, a
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        r = _zp_rem(a, b, p)
        if not r:
            return 0
        dr = len(r) - 1
        if da * db % 2:
            res = p - res
        res = res * pow(b[-1], da - dr, p) % p
        a, b = b, r


def zp_resultant_uni(f: ModPoly, g: ModPoly) -> int:
    if f.p != g.p:
        raise ValueError("mismatched primes")
    if f.is_zero() or g.is_zero():
        raise ValueError("zero polynomial")
    return _zp_resultant(list(f.coeffs), list(g.coeffs), f.p)


def _zp_interp(points: list, values: list, p: int) -> list:
    """Newton interpolation mod p; points must be pairwise distinct."""
    n = len(points)
    if len(values) != n:
        raise ValueError("points/values length mismatch")
    if len(set(points)) != n:
        raise ValueError("duplicate interpolation points")
    coeffs = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            d = (points[i] - points[i - j]) % p
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) * pow(d, p - 2, p) % p
    out = [0]
    for i in range(n - 1, -1, -1):
        # multiply by (x - points[i]) and add the divided difference
        nxt = [0] * (len(out) + 1)
        for k, c in enumerate(out):
            nxt[k] = (nxt[k] - c * points[i]) % p
            nxt[k + 1] = (nxt[k + 1] + c) % p
        nxt[0] = (nxt[0] + coeffs[i]) % p
        out = nxt
    return _zp_trim(out)


def zp_interpolate(points, values, p: int) -> ModPoly:
    return ModPoly.make(_zp_interp(list(points), list(values), p), p)


def zp_gcd_sylvester(f: ModPoly, g: ModPoly) -> ModPoly:
    """Monic gcd mod p read off the echelon form of the Sylvester matrix."""
    if f.p != g.p:
        raise ValueError("mismatched primes")
    p = f.p
    fa, gb = list(f.coeffs), list(g.coeffs)
    if not fa or not gb:
        raise ValueError("zero polynomial")
    m, n = len(fa) - 1, len(gb) - 1
    if m == 0 or n == 0:
        return ModPoly.make([1], p)
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(fa)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(gb)):
            row[i + k] = c
        rows.append(row)
    # row-only echelon reduction
    pivot_row = 0
    for col in range(size):
        sel = None
        for r in range(pivot_row, size):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        inv = pow(rows[pivot_row][col], p - 2, p)
        for r in range(pivot_row + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv % p
                for c in range(col, size):
                    rows[r][c] = (rows[r][c] - factor * rows[pivot_row][c]) % p
        pivot_row += 1
        if pivot_row == size:
            break
    last = None
    for r in range(size - 1, -1, -1):
        if any(rows[r]):
            last = rows[r]
            break
    if last is None:
        raise ArithmeticError("sylvester matrix of nonzero inputs is zero")
    # row entries are coefficients of degrees size-1-col
    coeffs = list(reversed(last))
    return ModPoly.make(_zp_monic(_zp_trim(coeffs), p), p)


def _zp_monic(c: list, p: int) -> list:
    if not c:
        return c
    inv = pow(c[-1], p - 2, p)
    return [a * inv % p for a in c]


# ---------------------------------------------------------------------------
# Chinese remaindering (incremental mixed-radix reconstruction)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueSystem:
    primes: tuple
    residues: tuple


def crt_reconstruct(rs: ResidueSystem) -> int:
    """The unique representative in (-M/2, M/2] congruent to every residue."""
    if len(set(rs.primes)) != len(rs.primes):
        raise ValueError("primes must be pairwise distinct")
    x, mod = 0, 1
    for p, r in zip(rs.primes, rs.residues):
        t = (r - x) * pow(mod % p, p - 2, p) % p
        x += mod * t
        mod *= p
    if 2 * x > mod:
        x -= mod
    return x


class _CrtAccumulator:
    """Coefficient-wise incremental CRT with symmetric lift."""

    def __init__(self):
        self.mod = 1
        self.vals: list = []

    def add(self, p: int, coeffs: list):
        coeffs = list(coeffs)
        n = max(len(self.vals), len(coeffs))
        coeffs += [0] * (n - len(coeffs))
        self.vals += [0] * (n - len(self.vals))
        if self.mod == 1:
            self.vals = [c % p for c in coeffs]
        else:
            inv = pow(self.mod % p, p - 2, p)
            self.vals = [v + self.mod * ((c - v) * inv % p)
                         for v, c in zip(self.vals, coeffs)]
        self.mod *= p

    def symmetric(self) -> IntPoly:
        half = self.mod // 2
        return upoly.trim([v - self.mod if v > half else v for v in self.vals])


# ---------------------------------------------------------------------------
# integer univariate gcd (modular scheme with trial-division verification)
# ---------------------------------------------------------------------------

def int_gcd_uni(f: IntPoly, g: IntPoly, seed: int = 0) -> IntPoly:
    """Primitive gcd over Z with positive leading coefficient."""
    f = upoly.trim(list(f))
    g = upoly.trim(list(g))
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    if not f:
        return upoly.primitive(g)
    if not g:
        return upoly.primitive(f)
    fp, gp = upoly.primitive(f), upoly.primitive(g)
    if len(fp) == 1 or len(gp) == 1:
        return [1]
    gamma = int_gcd(fp[-1], gp[-1])
    acc = _CrtAccumulator()
    best_deg = None
    for p in prime_stream(seed):
        if fp[-1] % p == 0 or gp[-1] % p == 0:
            continue
        gm = _zp_gcd([c % p for c in fp], [c % p for c in gp], p)
        d = len(gm) - 1
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            acc = _CrtAccumulator()
        elif d > best_deg:
            continue
        acc.add(p, [c * gamma % p for c in gm])
        cand = upoly.primitive(acc.symmetric())
        if len(cand) - 1 == best_deg and \
                upoly.divexact(fp, cand) is not None and \
                upoly.divexact(gp, cand) is not None:
            return cand
    raise ArithmeticError("prime table exhausted in gcd computation")


# ---------------------------------------------------------------------------
# bivariate resultants (evaluate / interpolate / Chinese remainder)
# ---------------------------------------------------------------------------

def biv_resultant(f: BivPoly, g: BivPoly, var: str = "y", seed: int = 0) -> IntPoly:
    """Resultant of f and g with respect to ``var``, exactly over Z.

    Equals the determinant of the Sylvester matrix of f and g viewed as
    polynomials in ``var``; the result is a polynomial in the other variable
    (lowest degree first).
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of zero polynomial")
    if var == "x":
        f, g = f.swap(), g.swap()
    elif var != "y":
        raise ValueError("var must be 'x' or 'y'")
    fc = f.coeffs_wrt_y()
    gc = g.coeffs_wrt_y()
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0 and n == 0:
        return [1]
    if m == 0:
        return upoly.pow_(fc[0], n)
    if n == 0:
        return upoly.pow_(gc[0], m)
    bound = _det_coeff_bound(fc, gc)
    deg_bound = f.deg_x() * n + g.deg_x() * m
    acc = _CrtAccumulator()
    for p in prime_stream(seed):
        if acc.mod > 2 * bound:
            break
        fpc = [[c % p for c in cf] for cf in fc]
        gpc = [[c % p for c in cg] for cg in gc]
        if not _zp_trim(list(fpc[-1])) or not _zp_trim(list(gpc[-1])):
            continue  # leading coefficient collapses: unlucky prime
        points, values = [], []
        t = 0
        while len(points) < deg_bound + 1:
            if t >= p:
                raise ArithmeticError("prime too small for interpolation")
            if _zp_eval(fpc[-1], t, p) and _zp_eval(gpc[-1], t, p):
                fu = _zp_trim([_zp_eval(cf, t, p) for cf in fpc])
                gu = _zp_trim([_zp_eval(cg, t, p) for cg in gpc])
                points.append(t)
                values.append(_zp_resultant(fu, gu, p))
            t += 1
        acc.add(p, _zp_interp(points, values, p))
    else:
        raise ArithmeticError("prime table exhausted in resultant computation")
    return acc.symmetric()


def _det_coeff_bound(fc: list, gc: list) -> int:
    """Every coefficient of det(Sylvester) is bounded by prod of column 1-norm sums."""
    m, n = len(fc) - 1, len(gc) - 1
    norm_f = [sum(abs(a) for a in c) for c in fc]
    norm_g = [sum(abs(a) for a in c) for c in gc]
    bound = 1
    for j in range(m + n):
        s = 0
        for r in range(n):
            k = m - j + r
            if 0 <= k <= m:
                s += norm_f[k]
        for r in range(m):
            k = n - j + r
            if 0 <= k <= n:
                s += norm_g[k]
        bound *= max(1, s)
    return bound


# ---------------------------------------------------------------------------
# modular subresultant degree profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModularSubresultantProfile:
    prime: int
    chain_degrees: tuple   # deg S_i for i = 0..t
    factor_degrees: tuple  # d_i = deg S_{i-1} - deg S_i for i = 1..t


def modular_subres_profile(f: BivPoly, g: BivPoly, rstar: IntPoly,
                           p: int) -> ModularSubresultantProfile:
    """Degree profile of the subresultant gcd chain of f, g mod p.

    ``rstar`` is the square-free part of res(f, g; y) over Z; the chain is
    S_0 = rstar mod p, S_i = gcd(S_{i-1}, psc_i mod p), with psc_i the i-th
    principal subresultant coefficient of f and g with respect to y.
    """
    fc = [[c % p for c in cf] for cf in f.coeffs_wrt_y()]
    gc = [[c % p for c in cg] for cg in g.coeffs_wrt_y()]
    if not _zp_trim(list(fc[-1])) or not _zp_trim(list(gc[-1])):
        raise UnluckyPrime(p)
    m, n = len(fc) - 1, len(gc) - 1
    if m < n:
        fc, gc = gc, fc
        m, n = n, m
    dmax = max(f.deg_x(), g.deg_x(), 0)
    # sample enough points for every psc_i at once
    need = (m + n - 2) * dmax + 1
    points = []
    t = 0
    while len(points) < need:
        if t >= p:
            raise UnluckyPrime(p)
        if _zp_eval(fc[-1], t, p) and _zp_eval(gc[-1], t, p):
            points.append(t)
        t += 1
    psc_values = {i: [] for i in range(1, n + 1)}
    for t in points:
        fu = [_zp_eval(cf, t, p) for cf in fc]
        gu = [_zp_eval(cg, t, p) for cg in gc]
        for i in range(1, n + 1):
            psc_values[i].append(_psc_det(fu, gu, i, p))
    s0 = _zp_monic(_zp_trim([c % p for c in rstar]), p)
    if len(s0) - 1 != upoly.degree(rstar):
        raise UnluckyPrime(p)
    chain = [len(s0) - 1]
    d = []
    cur = s0
    for i in range(1, n + 1):
        cnt = (m + n - 2 * i) * dmax + 1
        sri = _zp_interp(points[:cnt], psc_values[i][:cnt], p)
        if sri:
            cur = _zp_gcd(cur, sri, p)
        chain.append(len(cur) - 1)
        d.append(chain[-2] - chain[-1])
    return ModularSubresultantProfile(p, tuple(chain), tuple(d))


def _psc_det(a: list, b: list, i: int, p: int) -> int:
    """i-th principal subresultant coefficient of univariate a, b mod p."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n - 2 * i
    if size < 0:
        raise ValueError("index too large")
    if size == 0:
        return 1

    def aa(k):
        return a[k] if 0 <= k <= m else 0

    def bb(k):
        return b[k] if 0 <= k <= n else 0

    rows = []
    for r in range(n - i):
        row = [aa(m - c + r) for c in range(size - 1)]
        row.append(aa(2 * i - n + 1 + r))
        rows.append(row)
    for r in range(m - i):
        row = [bb(n - c + r) for c in range(size - 1)]
        row.append(bb(2 * i - m + 1 + r))
        rows.append(row)
    return _zp_det(rows, p)


def _zp_det(rows: list, p: int) -> int:
    n = len(rows)
    rows = [list(r) for r in rows]
    det = 1
    for col in range(n):
        sel = None
        for r in range(col, n):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            return 0
        if sel != col:
            rows[col], rows[sel] = rows[sel], rows[col]
            det = -det % p
        det = det * rows[col][col] % p
        inv = pow(rows[col][col], p - 2, p)
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] * inv % p
                for c in range(col, n):
                    rows[r][c] = (rows[r][c] - factor * rows[col][c]) % p
    return det % p
