"""Certified isolation of all real solutions of a bivariate system.

The pipeline projects the solutions onto both axes through resultants,
separates each projected root inside a complex disc with a certified floor
for the resultant magnitude on its boundary, and then decides each
candidate pair by conservative interval exclusion or by an inclusion
predicate built from Hadamard bounds for the resultant cofactors.  A stack
of optional fiber filters (numeric, bitstream, combinatorial,
bidirectional) decides most candidates early; enabling or disabling them
never changes the result.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from . import upoly
from .bdc import isolate_bitstream
from .bivpoly import BivPoly, gcd_biv
from .cnum import FiberSource, isolate_complex
from .dyadic import Dyadic, ZERO, sqrt_up
from .intervals import (ComplexBox, ComplexDisc, RealInterval, disc_to_box,
                        interval_eval_biv)
from .modpoly import biv_resultant, int_gcd_uni
from .upoly import (AlgebraicNumber, IntPoly, SquareFreeDecomposition,
                    is_root_of, qir_refine, taylor_disc_test)

ALL_FILTERS = frozenset({"numeric", "bitstream", "combinatorial", "bidirectional"})


class CommonFactorError(ValueError):
    def __init__(self, factor: BivPoly):
        super().__init__("input curves share a common factor")
        self.factor = factor


@dataclass
class ProjectionSet:
    axis: str                         # "x": roots on the x-axis (res wrt y)
    resultant: IntPoly
    decomposition: Optional[SquareFreeDecomposition]
    roots: list                      # AlgebraicNumber, ascending
    lead_gcd: IntPoly                # gcd of the leading coefficients


@dataclass(frozen=True)
class IsolatingDisc:
    center: Dyadic
    radius: Dyadic          # twice the bracket radius at separation time
    lower_bound: Dyadic     # certified floor for |R| on the boundary circle

    def complex_disc(self) -> ComplexDisc:
        return ComplexDisc(self.center, ZERO, self.radius)


@dataclass(frozen=True)
class SolutionBox:
    x: AlgebraicNumber
    y: AlgebraicNumber

    def box(self) -> tuple:
        return (self.x.interval, self.y.interval)

    def refined(self, target: Dyadic) -> "SolutionBox":
        return SolutionBox(qir_refine(self.x, target), qir_refine(self.y, target))


@dataclass(frozen=True)
class CofactorBoundSet:
    u_y: Dyadic
    v_y: Dyadic
    u_x: Dyadic
    v_x: Dyadic


class Candidate:
    __slots__ = ("alpha", "beta", "alpha_idx", "beta_idx", "disc_a", "disc_b",
                 "status", "reason", "bounds")

    def __init__(self, alpha, beta, alpha_idx, beta_idx, disc_a, disc_b):
        self.alpha = alpha
        self.beta = beta
        self.alpha_idx = alpha_idx
        self.beta_idx = beta_idx
        self.disc_a = disc_a
        self.disc_b = disc_b
        self.status = "undecided"
        self.reason = ""
        self.bounds: Optional[CofactorBoundSet] = None

    def decide(self, status: str, reason: str):
        if self.status == "undecided":
            self.status = status
            self.reason = reason


# ---------------------------------------------------------------------------
# projection
# ---------------------------------------------------------------------------

def biproject(f: BivPoly, g: BivPoly, seed: int = 0) -> tuple:
    """Project the solutions onto both axes; errors out on common factors."""
    if f.is_zero() or g.is_zero():
        raise ValueError("zero input polynomial")
    r_y = biv_resultant(f, g, "y", seed)   # polynomial in x
    r_x = biv_resultant(f, g, "x", seed)   # polynomial in y
    if not r_y or not r_x:
        raise CommonFactorError(gcd_biv(f, g))
    ps_x = _projection_set("x", r_y, f.lead_coeff_y(), g.lead_coeff_y())
    ps_y = _projection_set("y", r_x, f.swap().lead_coeff_y(),
                           g.swap().lead_coeff_y())
    return ps_x, ps_y


def _projection_set(axis, resultant, lc_f, lc_g) -> ProjectionSet:
    lead_gcd = int_gcd_uni(lc_f, lc_g) if (lc_f or lc_g) else []
    if upoly.degree(resultant) < 1:
        return ProjectionSet(axis, resultant, None, [], lead_gcd)
    dec = upoly.squarefree_decompose(resultant)
    roots = upoly.isolate_decomposition(dec)
    return ProjectionSet(axis, resultant, dec, roots, lead_gcd)


# ---------------------------------------------------------------------------
# separation
# ---------------------------------------------------------------------------

def separate(ps: ProjectionSet, idx: int) -> tuple:
    """Certified isolating disc and boundary floor for one projected root.

    Refines the bracket until the disc of eight bracket-radii around the
    midpoint provably isolates the root from every other complex root of
    the resultant; returns (IsolatingDisc, refined root).
    """
    root = ps.roots[idx]
    factors = [(list(p), m) for p, m in ps.decomposition.factors]
    own_poly, own_mult = next((p, m) for p, m in factors if is_root_of(root, p))
    own_deriv = upoly.derivative(own_poly)
    if root.exact is not None and root.width().is_zero():
        root = _widen_exact(root)
    while True:
        m = root.interval.midpoint()
        r8 = root.interval.radius().scale2(3)
        ok = taylor_disc_test(own_deriv, m, r8, Fraction(3, 2))
        if ok:
            for p, _ in factors:
                if p is own_poly:
                    continue
                if not taylor_disc_test(p, m, r8, Fraction(1)):
                    ok = False
                    break
        if ok:
            break
        root = _shrink_half(root)
    m = root.interval.midpoint()
    r2 = root.interval.radius().scale2(1)
    at = m - r2
    value = abs(upoly.eval_dyadic(ps.resultant, at))
    lower = value.scale2(-(own_mult + upoly.degree(ps.resultant)))
    if lower.sign() <= 0:
        raise ArithmeticError("separation produced a non-positive floor")
    return IsolatingDisc(m, r2, lower), root


def _widen_exact(root: AlgebraicNumber) -> AlgebraicNumber:
    """Replace a width-zero exact bracket by a tiny positive isolating one."""
    p = list(root.poly)
    v = root.interval.lo
    k = 8
    while True:
        h = Dyadic(1, (v.exp if v.man else 0) - k)
        lo, hi = v - h, v + h
        if upoly.eval_dyadic(p, lo).sign() * upoly.eval_dyadic(p, hi).sign() < 0 \
                and upoly._variations_on(p, lo, hi) == 1:
            return replace(root, interval=RealInterval(lo, hi))
        k += 4


def _shrink_half(root: AlgebraicNumber) -> AlgebraicNumber:
    """Halve the bracket around its root, keeping exact dyadic roots centered."""
    if root.exact is not None and root.interval.contains_fraction(root.exact) \
            and Fraction(root.exact).denominator & (Fraction(root.exact).denominator - 1) == 0:
        v = Dyadic.from_fraction(Fraction(root.exact))
        h = root.interval.radius().half()
        return replace(root, interval=RealInterval(v - h, v + h))
    return qir_refine(root, root.width().scale2(-2))


# ---------------------------------------------------------------------------
# Hadamard cofactor bounds
# ---------------------------------------------------------------------------

def _cpoly_mag_upper(poly: IntPoly, box: ComplexBox, bits: int = 64) -> Dyadic:
    """Upper bound for |p(z)| over a complex box, p with integer coefficients."""
    acc = ComplexBox.point(ZERO, ZERO)
    for c in reversed(poly):
        acc = (acc * box + ComplexBox.point(Dyadic(c), ZERO)).outward(bits)
    return acc.mag_upper(bits)


def _power_bounds(base: Dyadic, count: int) -> list:
    out = [Dyadic(1)]
    for _ in range(count):
        out.append((out[-1] * base).round_up(64))
    return out


def _direction_bounds(fc: Sequence[IntPoly], gc: Sequence[IntPoly],
                      box_main: ComplexBox, box_other: ComplexBox) -> tuple:
    """Hadamard bounds for both cofactors of one projection direction.

    ``fc``/``gc``: coefficient polynomials with respect to the eliminated
    variable; their magnitudes are bounded over ``box_main``; the replaced
    final column holds powers of the eliminated variable, bounded over
    ``box_other``.
    """
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    f_mag = [_cpoly_mag_upper(c, box_main) for c in fc]
    g_mag = [_cpoly_mag_upper(c, box_main) for c in gc]
    var_mag = _power_bounds(box_other.mag_upper(), max(m, n))
    shared = Dyadic(1)
    for j in range(size - 1):
        sq = ZERO
        for r in range(n):
            k = m - j + r
            if 0 <= k <= m:
                sq = sq + f_mag[k] * f_mag[k]
        for r in range(m):
            k = n - j + r
            if 0 <= k <= n:
                sq = sq + g_mag[k] * g_mag[k]
        shared = (shared * sqrt_up(sq, 64)).round_up(64)
    sq_u = ZERO
    for r in range(n):
        b = var_mag[n - 1 - r]
        sq_u = sq_u + b * b
    sq_v = ZERO
    for r in range(m):
        b = var_mag[m - 1 - r]
        sq_v = sq_v + b * b
    u_bound = (shared * sqrt_up(sq_u, 64)).round_up(64)
    v_bound = (shared * sqrt_up(sq_v, 64)).round_up(64)
    return u_bound, v_bound


def hadamard_bounds(f: BivPoly, g: BivPoly, disc_a: IsolatingDisc,
                    disc_b: IsolatingDisc) -> CofactorBoundSet:
    """Bounds for the four resultant cofactors over the candidate polydisc.

    The cofactors are never computed: each bound is the product of column
    2-norm bounds of the corresponding Sylvester-like matrix, with entries
    bounded by interval arithmetic over a box containing the polydisc.
    """
    box_a = disc_to_box(disc_a.complex_disc())
    box_b = disc_to_box(disc_b.complex_disc())
    u_y, v_y = _direction_bounds(f.coeffs_wrt_y(), g.coeffs_wrt_y(),
                                 box_a, box_b)
    u_x, v_x = _direction_bounds(f.swap().coeffs_wrt_y(), g.swap().coeffs_wrt_y(),
                                 box_b, box_a)
    return CofactorBoundSet(u_y, v_y, u_x, v_x)


# ---------------------------------------------------------------------------
# exclusion / inclusion predicates
# ---------------------------------------------------------------------------

def validate_exclude(f: BivPoly, g: BivPoly, cand: Candidate) -> bool:
    """True when interval evaluation certifies the box holds no solution."""
    box = (cand.alpha.interval, cand.beta.interval)
    if not interval_eval_biv(f, box, 128).contains_zero():
        return True
    if not interval_eval_biv(g, box, 128).contains_zero():
        return True
    return False


def eval_dyadic_biv(f: BivPoly, x: Dyadic, y: Dyadic) -> Dyadic:
    acc = ZERO
    for c in reversed(f.coeffs_wrt_y()):
        acc = acc * y + upoly.eval_dyadic(c, x)
    return acc


def validate_include(f: BivPoly, g: BivPoly, cand: Candidate) -> bool:
    """True when the homotopy inclusion predicate certifies a solution.

    Uses the box center as sample point; all quantities are exact dyadics,
    so a True answer is a proof.
    """
    if cand.bounds is None:
        cand.bounds = hadamard_bounds(f, g, cand.disc_a, cand.disc_b)
    x0 = cand.alpha.interval.midpoint()
    y0 = cand.beta.interval.midpoint()
    fv = abs(eval_dyadic_biv(f, x0, y0))
    gv = abs(eval_dyadic_biv(g, x0, y0))
    b = cand.bounds
    if not (b.u_y * fv + b.v_y * gv) < cand.disc_a.lower_bound:
        return False
    return (b.u_x * fv + b.v_x * gv) < cand.disc_b.lower_bound


# ---------------------------------------------------------------------------
# fiber helpers
# ---------------------------------------------------------------------------

def fiber_degree(coeff_polys: Sequence[IntPoly], point: AlgebraicNumber):
    """Exact degree of the specialized polynomial, None if identically zero."""
    for j in range(len(coeff_polys) - 1, -1, -1):
        if coeff_polys[j] and not is_root_of(point, coeff_polys[j]):
            return j
    return None


def _segment_meets_disc(iv: RealInterval, disc: ComplexDisc) -> bool:
    """Conservative: False only when the real segment surely misses the disc."""
    if abs(disc.center_im) > disc.radius:
        return False
    return iv.overlaps(disc.real_projection())


class _FiberView:
    """One fiber of candidates sharing a projected coordinate."""

    def __init__(self, coord: AlgebraicNumber, cands: list, vertical: bool):
        self.coord = coord
        self.cands = cands
        self.vertical = vertical

    def cand_interval(self, c: Candidate) -> RealInterval:
        return (c.beta if self.vertical else c.alpha).interval

    def cand_disc(self, c: Candidate) -> ComplexDisc:
        return (c.disc_b if self.vertical else c.disc_a).complex_disc()


def _numeric_fiber_pass(solver, fiber: _FiberView, budget_bits: int):
    f_clusters = solver.fiber_clusters(fiber, solver.f, budget_bits)
    g_clusters = solver.fiber_clusters(fiber, solver.g, budget_bits)
    f_discs = None if f_clusters is None else \
        [c.enclosing_disc() for c in f_clusters]
    g_discs = None if g_clusters is None else \
        [c.enclosing_disc() for c in g_clusters]
    for cand in fiber.cands:
        if cand.status != "undecided":
            continue
        iv = fiber.cand_interval(cand)
        if f_discs is not None and \
                not any(_segment_meets_disc(iv, d) for d in f_discs):
            cand.decide("excluded", "numeric-fiber")
        elif g_discs is not None and \
                not any(_segment_meets_disc(iv, d) for d in g_discs):
            cand.decide("excluded", "numeric-fiber")
    if f_discs is None or g_discs is None:
        return
    # unique-overlap inclusion: only valid when the fiber surely carries a
    # common root, i.e. the leading coefficients do not both vanish here
    if solver.lead_gcd_vanishes(fiber):
        return
    overlaps = [(df, dg) for df in f_discs for dg in g_discs
                if df.intersects(dg)]
    if len(overlaps) != 1:
        return
    df, dg = overlaps[0]
    for cand in fiber.cands:
        if cand.status != "undecided":
            continue
        disc = fiber.cand_disc(cand)
        if df.contained_in(disc) or dg.contained_in(disc):
            cand.decide("certified", "numeric-fiber-unique-overlap")


def _bitstream_fiber_pass(solver, fiber: _FiberView, budget_bits: int):
    f_active = solver.fiber_active_intervals(fiber, solver.f, budget_bits)
    g_active = solver.fiber_active_intervals(fiber, solver.g, budget_bits)
    for cand in fiber.cands:
        if cand.status != "undecided":
            continue
        iv = fiber.cand_interval(cand)
        if f_active is not None and not any(iv.overlaps(a) for a in f_active):
            cand.decide("excluded", "bitstream-fiber")
        elif g_active is not None and not any(iv.overlaps(a) for a in g_active):
            cand.decide("excluded", "bitstream-fiber")


def _combinatorial_pass(solver, fiber: _FiberView):
    mult = fiber.coord.multiplicity
    certified = sum(1 for c in fiber.cands if c.status == "certified")
    undecided = [c for c in fiber.cands if c.status == "undecided"]
    if certified >= mult:
        for c in undecided:
            c.decide("excluded", "combinatorial-count")
        return
    if mult % 2 == 1 and certified == 0 and len(undecided) == 1 \
            and not solver.lead_gcd_vanishes(fiber):
        undecided[0].decide("certified", "combinatorial-parity")


# ---------------------------------------------------------------------------
# solver
# ---------------------------------------------------------------------------

class _Solver:
    def __init__(self, f, g, filters, seed, numeric_budget):
        self.f = f
        self.g = g
        self.filters = frozenset(filters)
        self.seed = seed
        self.numeric_budget = numeric_budget
        self.ps_x, self.ps_y = biproject(f, g, seed)
        self._degree_cache = {}

    # -- shared fiber machinery -------------------------------------------

    def _coeff_polys(self, poly: BivPoly, vertical: bool):
        return poly.coeffs_wrt_y() if vertical else poly.swap().coeffs_wrt_y()

    def fiber_source(self, fiber: _FiberView, poly: BivPoly):
        coeffs = self._coeff_polys(poly, fiber.vertical)
        deg = fiber_degree(coeffs, fiber.coord)
        if deg is None or deg == 0:
            return None, deg
        return FiberSource(coeffs, fiber.coord, deg), deg

    def fiber_clusters(self, fiber: _FiberView, poly: BivPoly, budget: int):
        """Certified cluster snapshot of the specialized polynomial.

        Returns [] when the fiber polynomial is a nonzero constant (no
        roots at all) and None when it vanishes identically or the engine
        cannot run.
        """
        src, deg = self.fiber_source(fiber, poly)
        if src is None:
            return [] if deg == 0 else None
        return isolate_complex(src, stop=None, max_bits=budget,
                               seed=self.seed, snapshot_rounds=4)

    def fiber_active_intervals(self, fiber: _FiberView, poly: BivPoly,
                               budget: int):
        src, deg = self.fiber_source(fiber, poly)
        if src is None:
            return [] if deg == 0 else None
        res = isolate_bitstream(src, max_bits=budget, complete=False)
        return res.isolated + res.unresolved

    def lead_gcd_vanishes(self, fiber: _FiberView) -> bool:
        h = self.ps_x.lead_gcd if fiber.vertical else self.ps_y.lead_gcd
        if upoly.degree(h) < 1:
            return False
        return is_root_of(fiber.coord, h)

    # -- pipeline ------------------------------------------------------------

    def run(self, region=None):
        if not self.ps_x.roots or not self.ps_y.roots:
            return []
        idx_x = [i for i, r in enumerate(self.ps_x.roots)
                 if region is None or _inside(r, region[0], region[1])]
        idx_y = [j for j, r in enumerate(self.ps_y.roots)
                 if region is None or _inside(r, region[2], region[3])]
        seps_x = {i: separate(self.ps_x, i) for i in idx_x}
        seps_y = {j: separate(self.ps_y, j) for j in idx_y}
        cands = []
        for i in idx_x:
            da, ra = seps_x[i]
            for j in idx_y:
                db, rb = seps_y[j]
                cands.append(Candidate(ra, rb, i, j, da, db))
        self.cands = cands
        fibers = self._group(vertical=True)
        for fiber in fibers:
            if "numeric" in self.filters:
                _numeric_fiber_pass(self, fiber, self.numeric_budget)
            if "bitstream" in self.filters:
                _bitstream_fiber_pass(self, fiber, self.numeric_budget)
            if "combinatorial" in self.filters:
                _combinatorial_pass(self, fiber)
        if "bidirectional" in self.filters and any(
                c.status == "undecided" for c in cands):
            for fiber in self._group(vertical=False):
                if all(c.status != "undecided" for c in fiber.cands):
                    continue
                if "numeric" in self.filters:
                    _numeric_fiber_pass(self, fiber, self.numeric_budget)
                if "bitstream" in self.filters:
                    _bitstream_fiber_pass(self, fiber, self.numeric_budget)
            if "combinatorial" in self.filters:
                for fiber in self._group(vertical=True):
                    _combinatorial_pass(self, fiber)
        self._main_loop()
        out = [SolutionBox(c.alpha, c.beta) for c in cands
               if c.status == "certified"]
        out.sort(key=lambda s: (s.x.interval.lo.as_fraction(),
                                s.y.interval.lo.as_fraction()))
        return out

    def _group(self, vertical: bool):
        fibers = {}
        for c in self.cands:
            key = c.alpha_idx if vertical else c.beta_idx
            fibers.setdefault(key, []).append(c)
        roots = self.ps_x.roots if vertical else self.ps_y.roots
        return [_FiberView(roots[k], fibers[k], vertical)
                for k in sorted(fibers)]

    def _main_loop(self):
        rounds = 0
        while any(c.status == "undecided" for c in self.cands):
            rounds += 1
            if rounds > 300:
                raise ArithmeticError("validation loop failed to terminate")
            for c in self.cands:
                if c.status != "undecided":
                    continue
                if validate_exclude(self.f, self.g, c):
                    c.decide("excluded", "interval-exclusion")
                elif validate_include(self.f, self.g, c):
                    c.decide("certified", "inclusion-predicate")
            if "combinatorial" in self.filters:
                for fiber in self._group(vertical=True):
                    _combinatorial_pass(self, fiber)
            for c in self.cands:
                if c.status == "undecided":
                    c.alpha = qir_refine(c.alpha, _narrow(c.alpha))
                    c.beta = qir_refine(c.beta, _narrow(c.beta))


def _narrow(root: AlgebraicNumber) -> Dyadic:
    w = root.width()
    return w if w.is_zero() else w.scale2(-2)


def _inside(root: AlgebraicNumber, lo: Fraction, hi: Fraction) -> bool:
    from .upoly import algnum_cmp_fraction
    return algnum_cmp_fraction(root, lo) >= 0 and \
        algnum_cmp_fraction(root, hi) <= 0


def solve(f: BivPoly, g: BivPoly, region=None,
          filters=ALL_FILTERS, seed: int = 0,
          width: Optional[Dyadic] = None,
          numeric_budget: int = 256) -> list:
    """All real solutions of f = g = 0, each in its own isolating box.

    ``region``: optional (x_lo, x_hi, y_lo, y_hi) Fractions restricting the
    search.  ``filters``: subset of {"numeric", "bitstream", "combinatorial",
    "bidirectional"}; the solution set does not depend on the choice.
    ``width``: optional final box width target.
    """
    solver = _Solver(f, g, filters, seed, numeric_budget)
    sols = solver.run(region)
    if width is not None:
        sols = [s.refined(width) for s in sols]
    return sols


def solutions_on_fiber(solutions: Sequence[SolutionBox],
                       alpha: AlgebraicNumber) -> list:
    """Solutions whose x-coordinate equals the given algebraic number."""
    from .upoly import algnum_eq
    return [s for s in solutions if algnum_eq(s.x, alpha)]
