"""Certified complex root isolation: iteration, certification, driver."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

from curvekit import upoly
from curvekit.bivpoly import BivPoly
from curvekit.cnum import (BitstreamPoly, BudgetExhausted, ExactSource,
                           FiberSource, aberth_step, initial_guesses,
                           isolate_complex, neumaier_certify)
from curvekit.dyadic import Dyadic
from curvekit.intervals import RealInterval
from curvekit.upoly import descartes_isolate


def test_fiber_source_linear_in_sqrt2():
    # f = x + y at alpha = sqrt(2): constant coefficient hull of sqrt(2)
    f = BivPoly({(1, 0): 1, (0, 1): 1})
    alpha = [r for r in descartes_isolate([-2, 0, 1]) if r.as_float() > 0][0]
    src = FiberSource(f.coeffs_wrt_y(), alpha)
    bp = src(20)
    assert bp.degree == 1
    assert bp.coeff_intervals[1].lo == Dyadic(1) == bp.coeff_intervals[1].hi
    c0 = bp.coeff_intervals[0]
    assert c0.width() <= Dyadic(1, -20)
    from math import isqrt
    s2 = Fraction(isqrt(2 * 4**40), 2**40)
    assert c0.lo.as_fraction() <= s2 + Fraction(1, 2**39)
    assert c0.hi.as_fraction() >= s2
    # halving mu halves the width (or better)
    bp2 = src(21)
    assert bp2.coeff_intervals[0].width() <= Dyadic(1, -21)


def test_fiber_source_rational_alpha_exact():
    f = BivPoly({(1, 0): 2, (0, 1): 1})  # 2x + y
    alpha = descartes_isolate([-1, 2])[0]
    alpha = upoly.qir_refine(alpha, Dyadic(1, -40))
    src = FiberSource(f.coeffs_wrt_y(), alpha)
    bp = src(50)
    assert bp.coeff_intervals[0].width() <= Dyadic(1, -50)


def test_aberth_step_moves_toward_roots():
    bp = ExactSource([-1, 0, 1])(53)  # z^2 - 1
    moved = aberth_step(bp, [mp.mpc(2), mp.mpc(-2)])
    assert abs(moved[0] - 1) < 1
    assert abs(moved[1] + 1) < 1


def test_aberth_step_fixed_at_root():
    bp = ExactSource([-1, 0, 1])(53)
    moved = aberth_step(bp, [mp.mpc(1), mp.mpc(-2)])
    assert moved[0] == mp.mpc(1)


def test_aberth_degree_one_exact_in_one_step():
    bp = ExactSource([-3, 1])(53)  # z - 3
    moved = aberth_step(bp, [mp.mpc(100)])
    assert abs(moved[0] - 3) < 1e-12


def test_neumaier_exact_guesses_zero_radius():
    bp = ExactSource([-1, 0, 1])(53)
    clusters = neumaier_certify(bp, [mp.mpc(1), mp.mpc(-1)])
    assert len(clusters) == 2
    assert sorted(c.multiplicity for c in clusters) == [1, 1]
    for c in clusters:
        assert c.discs[0].radius == Dyadic(0)


def test_neumaier_double_root_merges():
    bp = ExactSource([0, 0, 1])(53)  # z^2
    clusters = neumaier_certify(bp, [mp.mpc(1), mp.mpc(-1)])
    # discs D(1/2, 1/2) and D(-1/2, 1/2) meet at 0: one component, mult 2
    assert len(clusters) == 1
    assert clusters[0].multiplicity == 2
    lo = min(d.center_re - d.radius for d in clusters[0].discs)
    hi = max(d.center_re + d.radius for d in clusters[0].discs)
    assert lo <= Dyadic(0) <= hi


def test_neumaier_multiplicity_sum_invariant():
    rng = random.Random(1)
    for _ in range(20):
        deg = rng.randint(2, 6)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.randint(1, 9)]
        bp = ExactSource(coeffs)(53)
        guesses = initial_guesses(bp, seed=rng.randint(0, 100))
        clusters = neumaier_certify(bp, guesses)
        assert sum(c.multiplicity for c in clusters) == bp.degree


def test_isolate_simple_real_pair():
    clusters = isolate_complex(ExactSource([-2, 0, 1]), stop=2)
    assert len(clusters) == 2
    assert all(c.multiplicity == 1 for c in clusters)
    assert all(c.real_flag == "real" for c in clusters)
    vals = sorted(float(c.real_interval().midpoint()) for c in clusters)
    assert abs(vals[0] + 2**0.5) < 1e-6 and abs(vals[1] - 2**0.5) < 1e-6


def test_isolate_clustered_example():
    # (z^2+1)^2 (z-3): multiplicities {2, 2, 1}
    p = upoly.mul(upoly.mul([1, 0, 1], [1, 0, 1]), [-3, 1])
    clusters = isolate_complex(ExactSource(p), stop=3)
    assert sorted(c.multiplicity for c in clusters) == [1, 2, 2]
    for c in clusters:
        if c.multiplicity == 1:
            assert c.real_flag == "real"
            assert abs(float(c.real_interval().midpoint()) - 3) < 1e-6
        else:
            assert c.real_flag == "nonreal"
    assert sum(c.multiplicity for c in clusters) == 5


def test_isolate_impossible_target_fails():
    with pytest.raises(BudgetExhausted):
        isolate_complex(ExactSource([-2, 0, 1]), stop=3, max_bits=256)


def test_isolate_target_below_distinct_count_fails():
    with pytest.raises(BudgetExhausted):
        isolate_complex(ExactSource([0, -1, 0, 1]), stop=1, max_bits=256)


def test_isolate_conjugate_symmetry_and_conservation():
    rng = random.Random(4)
    for _ in range(8):
        deg = rng.randint(2, 7)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.randint(1, 9)]
        sf = _squarefree_part(coeffs)
        n_distinct = upoly.degree(sf)
        clusters = isolate_complex(ExactSource(coeffs), stop=n_distinct,
                                   max_bits=4096)
        assert sum(c.multiplicity for c in clusters) == upoly.degree(
            upoly.trim(list(coeffs)))
        # conjugate symmetry of the cluster set
        nonreal = [c for c in clusters if c.real_flag == "nonreal"]
        for c in nonreal:
            mirror = [o for o in nonreal
                      if o.multiplicity == c.multiplicity and any(
                          dc.conj().intersects(do)
                          for dc in c.discs for do in o.discs)]
            assert mirror


def _squarefree_part(p):
    dec = upoly.squarefree_decompose(list(p))
    out = [1]
    for f, _ in dec.factors:
        out = upoly.mul(out, list(f))
    return out


def test_isolate_real_flags_match_descartes():
    rng = random.Random(8)
    for _ in range(6):
        deg = rng.randint(2, 6)
        coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.randint(1, 6)]
        sf = _squarefree_part(coeffs)
        clusters = isolate_complex(ExactSource(coeffs), stop=upoly.degree(sf),
                                   max_bits=4096)
        want_real = len(descartes_isolate(sf, check_squarefree=False))
        got_real = sum(1 for c in clusters if c.real_flag == "real")
        assert got_real == want_real


def test_isolate_deterministic():
    p = [6, -5, -2, 1]
    a = isolate_complex(ExactSource(p), stop=3, seed=42)
    b = isolate_complex(ExactSource(p), stop=3, seed=42)
    assert a == b
