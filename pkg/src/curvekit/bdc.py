"""Bitstream Descartes isolation for polynomials with interval coefficients.

Subdivision with sign-variation bounds computed conservatively from interval
coefficients.  Simple roots are certified isolated; intervals whose upper
variation bound vanishes are certified root-free; pre-declared "blocked"
intervals (known multiple roots with known multiplicity caps) absorb the
subdivision around them, which is what the fiber computation of multiple
roots needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .cnum import BitstreamPoly, BudgetExhausted
from .dyadic import Dyadic, ZERO
from .intervals import RealInterval


@dataclass
class BdcResult:
    isolated: list      # RealInterval: certified isolating for a simple root
    covered: list       # RealInterval: discarded because of blocked intervals
    rejected: list      # RealInterval: certified root-free
    unresolved: list    # RealInterval: gave up (partial runs only)


class _NeedPrecision(Exception):
    pass


def variation_bounds(signs: Sequence) -> tuple:
    """(min, max) sign variations over all resolutions of ambiguous signs.

    ``signs`` entries: +1, -1, 0 (exactly zero) or None (unresolved).
    """
    states = {0: (0, 0)}
    for s in signs:
        if s == 0:
            continue
        opts = (1, -1, None) if s is None else (s,)
        nxt = {}
        for last, (mn, mx) in states.items():
            for o in opts:
                if o is None:
                    key, inc = last, 0
                else:
                    key, inc = o, 1 if (last != 0 and o != last) else 0
                cand = (mn + inc, mx + inc)
                cur = nxt.get(key)
                nxt[key] = cand if cur is None else (min(cur[0], cand[0]),
                                                     max(cur[1], cand[1]))
        states = nxt
    return (min(v[0] for v in states.values()),
            max(v[1] for v in states.values()))


def _interval_sign(iv: RealInterval):
    if iv.lo.sign() > 0:
        return 1
    if iv.hi.sign() < 0:
        return -1
    if iv.lo.is_zero() and iv.hi.is_zero():
        return 0
    return None


def _transform(coeffs: Sequence[RealInterval], a: Dyadic, b: Dyadic,
               bits: int) -> list:
    """Interval coefficients whose variations bound the roots in (a, b)."""
    e = min(a.exp, b.exp, 0)
    a_num = a.man << (a.exp - e)
    w_num = (b.man << (b.exp - e)) - a_num
    n = len(coeffs) - 1
    # r = 2**(-e*n) p(a + (b-a) x), by interval Horner in the linear map
    acc = [coeffs[-1]]
    for i in range(n - 1, -1, -1):
        nxt = [RealInterval.point(ZERO)] * (len(acc) + 1)
        for j, c in enumerate(acc):
            nxt[j] = nxt[j] + c.mul_scalar(Dyadic(a_num))
            nxt[j + 1] = nxt[j + 1] + c.mul_scalar(Dyadic(w_num))
        nxt[0] = nxt[0] + coeffs[i].mul_scalar(Dyadic(1, -e * (n - i)))
        acc = [iv.outward(bits) for iv in nxt]
    acc = acc + [RealInterval.point(ZERO)] * (n + 1 - len(acc))
    rev = list(reversed(acc))
    # Taylor shift by one, interval arithmetic (exact adds)
    out = list(rev)
    for i in range(len(out) - 1):
        for j in range(len(out) - 2, i - 1, -1):
            out[j] = out[j] + out[j + 1]
    return out


def _var_bounds_on(bp: BitstreamPoly, a: Dyadic, b: Dyadic, bits: int) -> tuple:
    return variation_bounds([_interval_sign(iv)
                             for iv in _transform(bp.coeff_intervals, a, b, bits)])


def _subdivision_point(bp: BitstreamPoly, a: Dyadic, b: Dyadic, bits: int) -> Dyadic:
    mid = (a + b).half()
    cands = [mid]
    w = b - a
    for k in range(2, 24):
        cands.append(mid + w.scale2(-k))
        cands.append(mid - w.scale2(-k))
    for m in cands:
        if not bp.eval_box(m, ZERO, bits).contains_zero():
            return m
    raise _NeedPrecision


def isolate_bitstream(source: Callable[[int], BitstreamPoly],
                      blocked: Sequence = (),
                      start_bits: int = 53,
                      max_bits: int = 8192,
                      complete: bool = True) -> BdcResult:
    """Isolate the simple real roots of a refinable-coefficient polynomial.

    ``blocked`` holds (interval, multiplicity_cap) pairs for already-known
    multiple roots; subdivision intervals falling inside one, or containing
    one while their variation bound does not exceed its cap, are discarded.
    Every real root ends up in a blocked interval, in exactly one isolated
    interval, or (with ``complete=False``, when the precision ladder runs
    out) in an unresolved leaf.
    """
    bits = start_bits
    while True:
        try:
            return _isolate_at(source(bits), blocked, bits)
        except _NeedPrecision as stuck:
            bits *= 2
            if bits > max_bits:
                if complete:
                    raise BudgetExhausted("bitstream isolation precision ladder")
                return stuck.partial


def _isolate_at(bp: BitstreamPoly, blocked, bits: int) -> BdcResult:
    k = bp.root_radius_log2()
    bound = Dyadic(1, k)
    res = BdcResult([], [], [], [])
    max_depth = max(96, 2 * bits)
    stack = [(-bound, bound, 0)]
    while stack:
        a, b, depth = stack.pop()
        iv = RealInterval(a, b)
        if any(bi.encloses(iv) for bi, _ in blocked):
            res.covered.append(iv)
            continue
        lo_var, hi_var = _var_bounds_on(bp, a, b, bits + 32)
        if hi_var == 0:
            res.rejected.append(iv)
            continue
        enclosed = [(bi, kj) for bi, kj in blocked if iv.encloses(bi)]
        if len(enclosed) == 1 and hi_var <= enclosed[0][1]:
            res.covered.append(iv)
            continue
        if lo_var == hi_var == 1 and not any(iv.overlaps(bi) for bi, _ in blocked):
            res.isolated.append(iv)
            continue
        if depth >= max_depth:
            res.unresolved.append(iv)
            res.unresolved.extend(RealInterval(x, y) for x, y, _ in stack)
            err = _NeedPrecision()
            err.partial = res
            raise err
        try:
            m = _subdivision_point(bp, a, b, bits + 32)
        except _NeedPrecision as err:
            res.unresolved.append(iv)
            res.unresolved.extend(RealInterval(x, y) for x, y, _ in stack)
            err.partial = res
            raise
        stack.append((a, m, depth + 1))
        stack.append((m, b, depth + 1))
    res.isolated.sort(key=lambda i: i.lo.as_fraction())
    res.rejected.sort(key=lambda i: i.lo.as_fraction())
    return res
