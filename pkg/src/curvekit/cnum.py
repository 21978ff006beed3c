"""Certified complex root isolation for refinable-coefficient polynomials.

The heuristic part is a simultaneous (Aberth-Ehrlich) iteration run in
mpmath floating point; certification is exact: inclusion discs are derived
from the iteration state with conservative dyadic interval arithmetic over
the whole coefficient neighborhood, so every reported cluster is guaranteed
to contain exactly as many roots (with multiplicity) as it has member
discs, for every polynomial within the coefficient intervals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import mpmath as mp

from .dyadic import Dyadic, ZERO, sqrt_up
from .intervals import ComplexBox, ComplexDisc, RealInterval
from .upoly import AlgebraicNumber, IntPoly, qir_refine
from .intervals import interval_eval_uni


class BudgetExhausted(Exception):
    """Raised when the precision ladder runs out before reaching the target."""


@dataclass(frozen=True)
class BitstreamPoly:
    """Polynomial with interval coefficients of width <= 2**-mu_bits."""

    coeff_intervals: tuple  # RealInterval per coefficient, lowest degree first
    mu_bits: int
    degree: int

    def __post_init__(self):
        if len(self.coeff_intervals) != self.degree + 1:
            raise ValueError("coefficient count does not match degree")
        if self.coeff_intervals[-1].contains_zero():
            raise ValueError("leading coefficient interval must exclude zero")

    def median(self) -> list:
        """Midpoint representative as exact dyadics."""
        return [c.midpoint() for c in self.coeff_intervals]

    def eval_box(self, z_re: Dyadic, z_im: Dyadic, bits: int) -> ComplexBox:
        """Conservative value box of the whole neighborhood at an exact point."""
        z = ComplexBox.point(z_re, z_im)
        acc = ComplexBox.point(ZERO, ZERO)
        for c in reversed(self.coeff_intervals):
            acc = acc * z + ComplexBox(c, RealInterval.point(ZERO))
            acc = acc.outward(bits)
        return acc

    def root_radius_log2(self) -> int:
        """log2 of a radius certainly containing all roots (Cauchy-style)."""
        lead = self.coeff_intervals[-1].mig()
        top = max(c.mag() for c in self.coeff_intervals)
        num = top + lead
        k = (num.man.bit_length() + num.exp) - (lead.man.bit_length() + lead.exp - 1)
        return max(1, k)


@dataclass(frozen=True)
class CertifiedCluster:
    """Connected union of inclusion discs holding exactly ``multiplicity`` roots."""

    discs: tuple  # ComplexDisc members
    multiplicity: int
    real_flag: str = "undecided"  # "real" | "nonreal" | "undecided"

    def enclosing_disc(self) -> ComplexDisc:
        if len(self.discs) == 1:
            return self.discs[0]
        return _enclose(self.discs)

    def real_interval(self) -> RealInterval:
        out = self.discs[0].real_projection()
        for d in self.discs[1:]:
            out = out.union(d.real_projection())
        return out

    def meets_real_axis(self) -> bool:
        return any(d.meets_real_axis() for d in self.discs)


def _enclose(discs: Sequence[ComplexDisc]) -> ComplexDisc:
    re_lo = min(d.center_re - d.radius for d in discs)
    re_hi = max(d.center_re + d.radius for d in discs)
    im_lo = min(d.center_im - d.radius for d in discs)
    im_hi = max(d.center_im + d.radius for d in discs)
    c_re = (re_lo + re_hi).half()
    c_im = (im_lo + im_hi).half()
    half_w = (re_hi - re_lo).half()
    half_h = (im_hi - im_lo).half()
    rad = sqrt_up(half_w * half_w + half_h * half_h, 64)
    return ComplexDisc(c_re, c_im, rad)


# ---------------------------------------------------------------------------
# sources of refinable polynomials
# ---------------------------------------------------------------------------

class ExactSource:
    """Bitstream view of an exactly known integer/rational polynomial."""

    def __init__(self, coeffs: Sequence):
        from fractions import Fraction
        self.coeffs = [Fraction(c) for c in coeffs]
        while self.coeffs and self.coeffs[-1] == 0:
            self.coeffs.pop()
        if not self.coeffs:
            raise ValueError("zero polynomial")

    def __call__(self, mu_bits: int) -> BitstreamPoly:
        ivs = tuple(RealInterval.hull(c, mu_bits + 8) for c in self.coeffs)
        return BitstreamPoly(ivs, mu_bits, len(self.coeffs) - 1)


class FiberSource:
    """Bitstream representations of f(alpha, y) for an algebraic alpha.

    Coefficients are conservative interval evaluations of the y-coefficient
    polynomials of f over the (progressively refined) bracket of alpha.
    """

    def __init__(self, coeff_polys: Sequence[IntPoly], alpha: AlgebraicNumber,
                 degree: Optional[int] = None):
        self.coeff_polys = [list(c) for c in coeff_polys]
        if degree is not None:
            self.coeff_polys = self.coeff_polys[: degree + 1]
        while len(self.coeff_polys) > 1 and not self.coeff_polys[-1]:
            self.coeff_polys.pop()
        self.alpha = alpha

    def __call__(self, mu_bits: int) -> BitstreamPoly:
        target = Dyadic(1, -mu_bits)
        while True:
            ivs = [interval_eval_uni(c, self.alpha.interval, mu_bits + 16)
                   for c in self.coeff_polys]
            if all(iv.width() <= target for iv in ivs) \
                    and not ivs[-1].contains_zero():
                return BitstreamPoly(tuple(ivs), mu_bits, len(ivs) - 1)
            self.alpha = qir_refine(self.alpha, _next_width(self.alpha))


def _next_width(a: AlgebraicNumber) -> Dyadic:
    w = a.width()
    if w.is_zero():
        raise ArithmeticError("exact point cannot be refined further")
    return w.half().half()


# ---------------------------------------------------------------------------
# Aberth-Ehrlich iteration (floating point, mpmath)
# ---------------------------------------------------------------------------

class _Singular(Exception):
    pass


def _mp_eval(coeffs, z):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _mp_coeffs(rep: Sequence[Dyadic]):
    return [mp.mpf(c.man) * mp.mpf(2) ** c.exp for c in rep]


def _aberth_pass(coeffs, dcoeffs, zs):
    out = []
    n = len(zs)
    for i in range(n):
        z = zs[i]
        gz = _mp_eval(coeffs, z)
        if gz == 0:
            out.append(z)
            continue
        gpz = _mp_eval(dcoeffs, z)
        if gpz == 0:
            raise _Singular
        ratio = gz / gpz
        s = mp.mpc(0)
        for j in range(n):
            if j != i:
                d = z - zs[j]
                if d == 0:
                    raise _Singular
                s += 1 / d
        denom = 1 - ratio * s
        if denom == 0:
            raise _Singular
        out.append(z - ratio / denom)
    return out


def aberth_step(bp: BitstreamPoly, guesses, prec_bits: int = 64,
                rng: Optional[random.Random] = None):
    """One simultaneous-iteration update of all root guesses.

    Works on the midpoint representative; on a numerical singularity the
    representative is re-drawn inside the coefficient intervals (seeded),
    which the certification step later absorbs.
    """
    rng = rng or random.Random(0)
    rep = bp.median()
    with mp.workprec(max(prec_bits, 53)):
        for _ in range(8):
            coeffs = _mp_coeffs(rep)
            dcoeffs = [coeffs[i] * i for i in range(1, len(coeffs))]
            try:
                return _aberth_pass(coeffs, dcoeffs, list(guesses))
            except _Singular:
                rep = _perturb(bp, rng)
    return list(guesses)


def _perturb(bp: BitstreamPoly, rng: random.Random) -> list:
    out = []
    for c in bp.coeff_intervals:
        w = c.width()
        if w.is_zero():
            out.append(c.lo)
        else:
            t = rng.randrange(1, 8)
            out.append(c.lo + Dyadic(w.man * t, w.exp - 3))
    return out


def _dyadic_from_mpf(x) -> Dyadic:
    if x == 0:
        return ZERO
    sign, man, exp, _ = mp.mpf(x)._mpf_
    man, exp = int(man), int(exp)  # gmpy2 backend hands back mpz
    return Dyadic(-man if sign else man, exp)


def initial_guesses(bp: BitstreamPoly, seed: int = 0, prec_bits: int = 64):
    """Equidistributed points on a circle just above the root radius."""
    n = bp.degree
    rng = random.Random(seed)
    offset = rng.random()
    k = bp.root_radius_log2()
    with mp.workprec(max(prec_bits, 53)):
        radius = mp.mpf(2) ** k
        return [radius * mp.e ** (mp.mpc(0, 2) * mp.pi * (i + offset) / n)
                for i in range(n)]


# ---------------------------------------------------------------------------
# Neumaier certification (exact)
# ---------------------------------------------------------------------------

def neumaier_certify(bp: BitstreamPoly, guesses, bits: int = 128) -> list:
    """Group inclusion discs into certified clusters.

    For pairwise distinct root guesses z_i, the disc around z_i - r_i of
    radius |r_i| with r_i = (n/2) * g(z_i) / (g_n * prod_{j!=i}(z_i - z_j))
    is computed conservatively over the entire coefficient neighborhood;
    every polynomial in the neighborhood has exactly m roots (counted with
    multiplicity) in each connected component made of m discs.
    """
    n = bp.degree
    zs = _distinct_dyadic_guesses(guesses)
    if len(zs) != n:
        raise ValueError("need exactly degree many pairwise distinct guesses")
    lead = ComplexBox(bp.coeff_intervals[-1], RealInterval.point(ZERO))
    discs = []
    for i, (zre, zim) in enumerate(zs):
        gz = bp.eval_box(zre, zim, bits)
        prod = ComplexBox.point(Dyadic(1), ZERO)
        for j, (wre, wim) in enumerate(zs):
            if j != i:
                prod = prod * ComplexBox.point(zre - wre, zim - wim)
                prod = prod.outward(bits)
        omega = gz.div(prod, bits)
        r = omega.div(lead, bits)
        r = ComplexBox(r.re.mul_scalar(Dyadic(n, -1)), r.im.mul_scalar(Dyadic(n, -1)))
        center = ComplexBox.point(zre, zim) - r
        dev_re = center.re.radius()
        dev_im = center.im.radius()
        dev = sqrt_up(dev_re * dev_re + dev_im * dev_im, 64)
        radius = r.mag_upper(64) + dev
        discs.append(ComplexDisc(center.re.midpoint(), center.im.midpoint(), radius))
    return _group_discs(discs)


def _distinct_dyadic_guesses(guesses) -> list:
    zs = []
    seen = set()
    bump = 0
    for z in guesses:
        z = mp.mpc(z)
        re, im = _dyadic_from_mpf(z.real), _dyadic_from_mpf(z.imag)
        while (re, im) in seen:
            bump += 1
            re = re + Dyadic(bump, re.exp - 8 if re.man else -60)
        seen.add((re, im))
        zs.append((re, im))
    return zs


def _group_discs(discs: list) -> list:
    n = len(discs)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if discs[i].intersects(discs[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(discs[i])
    clusters = [CertifiedCluster(tuple(g), len(g)) for g in groups.values()]
    clusters.sort(key=lambda c: (c.discs[0].center_re.as_fraction(),
                                 c.discs[0].center_im.as_fraction()))
    return clusters


def _classify(clusters: list) -> list:
    """Resolve real/nonreal flags; valid only for isolating cluster sets."""
    out = []
    for i, c in enumerate(clusters):
        if not c.meets_real_axis():
            out.append(CertifiedCluster(c.discs, c.multiplicity, "nonreal"))
            continue
        conj = [d.conj() for d in c.discs]
        clash = False
        for j, other in enumerate(clusters):
            if j == i:
                continue
            if any(dc.intersects(do) for dc in conj for do in other.discs):
                clash = True
                break
        out.append(CertifiedCluster(c.discs, c.multiplicity,
                                    "real" if not clash else "undecided"))
    return out


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def isolate_complex(source: Callable[[int], BitstreamPoly],
                    stop: Optional[int] = None,
                    max_bits: int = 2048,
                    seed: int = 0,
                    start_bits: int = 53,
                    separate_real: bool = False,
                    snapshot_rounds: Optional[int] = None) -> list:
    """Drive the iteration/certification loop until clusters isolate.

    With a ``stop`` target, succeeds once the number of certified clusters
    equals it; the clusters are then isolating, their real/nonreal flags are
    resolved and (optionally) the real projections of real clusters are made
    pairwise disjoint.  Raises BudgetExhausted when the precision ladder
    exceeds ``max_bits`` first.  Without a target, returns the certified
    cluster snapshot at the end of the ladder with flags undecided.
    """
    bits = start_bits
    bp = source(bits)
    n = bp.degree
    if n == 0:
        return []
    if stop is not None and not 1 <= stop <= n:
        raise BudgetExhausted(f"cluster target {stop} impossible for degree {n}")
    rng = random.Random(seed)
    guesses = initial_guesses(bp, seed, bits + 32)
    prev_multi = None
    rounds_here = 0
    total_rounds = 0
    while True:
        guesses = _iterate(bp, guesses, bits, rng, n)
        clusters = neumaier_certify(bp, guesses, bits + 32)
        total_rounds += 1
        if stop is None and snapshot_rounds is not None \
                and total_rounds >= snapshot_rounds:
            return clusters
        if stop is not None and len(clusters) == stop:
            done, clusters = _finalize(clusters, separate_real)
            if done:
                return clusters
        # Newton acceleration for persistent multiple clusters
        multi = tuple(c.multiplicity for c in clusters)
        if prev_multi == multi and any(m > 1 for m in multi):
            guesses = _newton_for_clusters(bp, clusters, guesses, bits)
        prev_multi = multi
        rounds_here += 1
        if _needs_more_precision(bp, guesses, bits) or rounds_here >= 8:
            bits *= 2
            rounds_here = 0
            if bits > max_bits:
                if stop is None:
                    return clusters
                raise BudgetExhausted(
                    f"{len(clusters)} clusters at {max_bits} bits, target {stop}")
            bp = source(bits)


def _iterate(bp, guesses, bits, rng, n):
    out = list(guesses)
    with mp.workprec(bits + 32):
        for _ in range(4 * n):
            out = aberth_step(bp, out, bits + 32, rng)
    return out


def _finalize(clusters, separate_real):
    clusters = _classify(clusters)
    if any(c.real_flag == "undecided" for c in clusters):
        return False, clusters
    if separate_real:
        reals = [c.real_interval() for c in clusters if c.real_flag == "real"]
        for i in range(len(reals)):
            for j in range(i + 1, len(reals)):
                if reals[i].overlaps(reals[j]):
                    return False, clusters
    return True, clusters


def _needs_more_precision(bp, guesses, bits) -> bool:
    for z in guesses:
        z = mp.mpc(z)
        box = bp.eval_box(_dyadic_from_mpf(z.real), _dyadic_from_mpf(z.imag),
                          bits + 32)
        if box.contains_zero():
            return True
    return False


def _newton_for_clusters(bp, clusters, guesses, bits):
    """lambda-order Newton steps pull member guesses into multiple roots."""
    rep = bp.median()
    out = [mp.mpc(z) for z in guesses]
    with mp.workprec(bits + 32):
        coeffs = _mp_coeffs(rep)
        dcoeffs = [coeffs[i] * i for i in range(1, len(coeffs))]
        for c in clusters:
            if c.multiplicity <= 1:
                continue
            members = _guesses_in(c, out)
            for idx in members:
                z = out[idx]
                for _ in range(3):
                    gz = _mp_eval(coeffs, z)
                    gpz = _mp_eval(dcoeffs, z)
                    if gpz == 0 or gz == 0:
                        break
                    z = z - c.multiplicity * gz / gpz
                out[idx] = z
    # keep guesses pairwise distinct after the pull
    seen = {}
    for i, z in enumerate(out):
        key = (str(z.real), str(z.imag))
        if key in seen:
            out[i] = z + mp.mpf(2) ** (-bits // 2 - 4) * (i + 1)
        seen[key] = i
    return out


def _guesses_in(cluster, guesses):
    idxs = []
    for i, z in enumerate(guesses):
        re = _dyadic_from_mpf(mp.mpc(z).real)
        im = _dyadic_from_mpf(mp.mpc(z).imag)
        for d in cluster.discs:
            dre = re - d.center_re
            dim = im - d.center_im
            if (dre * dre + dim * dim) <= (d.radius * d.radius):
                idxs.append(i)
                break
    return idxs
