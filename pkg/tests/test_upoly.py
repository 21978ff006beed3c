"""Square-free decomposition, root isolation, refinement and disc tests."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvekit import upoly
from curvekit.dyadic import Dyadic
from curvekit.upoly import (AlgebraicNumber, algnum_cmp, algnum_cmp_fraction,
                            algnum_eq, descartes_isolate, is_root_of,
                            qir_refine, squarefree_decompose, taylor_disc_test)


def test_squarefree_example_cubic():
    # x^3 - 3x + 2 = (x - 1)^2 (x + 2)
    dec = squarefree_decompose([2, -3, 0, 1])
    assert dec.content == 1
    assert dec.factors == (((2, 1), 1), ((-1, 1), 2))
    assert dec.reconstruct() == [2, -3, 0, 1]


def test_squarefree_already_squarefree():
    dec = squarefree_decompose([-2, 0, 1])
    assert dec.factors == (((-2, 0, 1), 1),)
    assert dec.content == 1


def test_squarefree_with_content():
    dec = squarefree_decompose([0, 0, 4])  # 4x^2
    assert dec.content == 4
    assert dec.factors == (((0, 1), 2),)


def test_squarefree_reconstruction_random():
    rng = random.Random(7)
    for _ in range(60):
        p = [rng.choice([-1, 1]) * rng.randint(1, 4)]
        for _ in range(rng.randint(1, 3)):
            factor = [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))] + [rng.randint(1, 4)]
            p = upoly.mul(p, upoly.pow_(factor, rng.randint(1, 3)))
        dec = squarefree_decompose(p)
        assert dec.reconstruct() == p


def test_descartes_sqrt2():
    roots = descartes_isolate([-2, 0, 1])
    assert len(roots) == 2
    lo, hi = roots
    assert float(lo.interval.lo) >= -2 and float(lo.interval.hi) <= 0
    assert float(hi.interval.lo) >= 0 and float(hi.interval.hi) <= 2
    for r in roots:  # sign evaluation at endpoints brackets the root
        s1 = upoly.sign_at([-2, 0, 1], r.interval.lo.as_fraction())
        s2 = upoly.sign_at([-2, 0, 1], r.interval.hi.as_fraction())
        assert s1 * s2 < 0


def test_descartes_no_real_roots():
    assert descartes_isolate([1, 0, 1]) == []


def test_descartes_planted_roots():
    # x(x-1)(x+1) = x^3 - x
    roots = descartes_isolate([0, -1, 0, 1])
    assert len(roots) == 3
    for r, target in zip(roots, (-1, 0, 1)):
        assert r.interval.contains_fraction(Fraction(target))


@given(st.sets(st.integers(-8, 8), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_descartes_planted_integer_roots_complete(roots_set):
    p = [1]
    for r in roots_set:
        p = upoly.mul(p, [-r, 1])
    found = descartes_isolate(p)
    assert len(found) == len(roots_set)
    for r, want in zip(found, sorted(roots_set)):
        assert r.interval.contains_fraction(Fraction(want))
        # no other planted root in the same bracket
        others = [w for w in roots_set if w != want]
        assert not any(r.interval.contains_fraction(Fraction(w)) for w in others)


def test_descartes_rejects_non_squarefree():
    with pytest.raises(ValueError):
        descartes_isolate([1, -2, 1])  # (x-1)^2


def test_qir_sqrt2_high_precision():
    root = [r for r in descartes_isolate([-2, 0, 1]) if r.as_float() > 0][0]
    refined = qir_refine(root, Dyadic(1, -20))
    assert refined.width() <= Dyadic(1, -20)
    # independent high-precision sqrt(2): isqrt(2 * 4**k) / 2**k
    from math import isqrt
    k = 40
    lo = Fraction(isqrt(2 * 4**k), 2**k)
    assert refined.interval.lo.as_fraction() <= lo + Fraction(1, 2**k)
    assert refined.interval.hi.as_fraction() >= lo
    # isolation invariant: sign change persists
    s_lo = upoly.sign_at([-2, 0, 1], refined.interval.lo.as_fraction())
    s_hi = upoly.sign_at([-2, 0, 1], refined.interval.hi.as_fraction())
    assert s_lo * s_hi < 0


def test_qir_rational_root_collapses_or_brackets():
    root = descartes_isolate([-1, 2])[0]  # 2x - 1
    refined = qir_refine(root, Dyadic(1, -30))
    if refined.exact is not None:
        assert refined.exact == Fraction(1, 2)
    else:
        assert refined.width() <= Dyadic(1, -30)
        assert refined.interval.contains_fraction(Fraction(1, 2))


def test_qir_idempotent_when_wide_target():
    root = descartes_isolate([-2, 0, 1])[1]
    assert qir_refine(root, Dyadic(16)) is root


def test_taylor_disc_test_examples():
    one_half = Dyadic(1, -1)
    assert taylor_disc_test([0, 1], Dyadic(1), one_half, Fraction(1)) is True
    assert taylor_disc_test([0, 1], Dyadic(0), one_half, Fraction(1)) is False
    assert taylor_disc_test([-2, 0, 1], Dyadic(0), Dyadic(1), Fraction(1)) is True


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6),
       st.integers(-8, 8), st.integers(0, 4))
@settings(max_examples=120, deadline=None)
def test_taylor_disc_test_soundness(coeffs, m8, r8):
    p = upoly.trim(list(coeffs))
    if upoly.degree(p) < 1:
        return
    m = Dyadic(m8, -2)
    r = Dyadic(r8, -2)
    if taylor_disc_test(p, m, r, Fraction(1)):
        # no real root of p may lie within the closed disc
        for root in descartes_isolate(upoly.primitive(
                squarefree_part(p)), check_squarefree=False):
            refined = qir_refine(root, Dyadic(1, -40))
            mid = refined.interval.midpoint().as_fraction()
            dist = abs(mid - m.as_fraction())
            assert dist + Fraction(1, 2**38) > r.as_fraction()


def squarefree_part(p):
    dec = squarefree_decompose(p)
    out = [1]
    for f, _ in dec.factors:
        out = upoly.mul(out, list(f))
    return out


def test_algnum_equality_and_order():
    sqrt2 = [r for r in descartes_isolate([-2, 0, 1]) if r.as_float() > 0][0]
    sqrt2_again = [r for r in descartes_isolate([-4, 0, 2]) if r.as_float() > 0][0]
    assert algnum_eq(sqrt2, sqrt2_again)
    # root of x^4 - 4 = (x^2-2)(x^2+2): positive real root is sqrt(2) again
    quartic = [r for r in descartes_isolate([-4, 0, 0, 0, 1]) if r.as_float() > 0][0]
    assert algnum_eq(sqrt2, quartic)
    sqrt3 = [r for r in descartes_isolate([-3, 0, 1]) if r.as_float() > 0][0]
    assert not algnum_eq(sqrt2, sqrt3)
    assert algnum_cmp(sqrt2, sqrt3) == -1
    assert algnum_cmp(sqrt3, sqrt2) == 1
    assert algnum_cmp(sqrt2, quartic) == 0
    assert algnum_cmp_fraction(sqrt2, Fraction(3, 2)) < 0
    assert algnum_cmp_fraction(sqrt2, Fraction(7, 5)) > 0


def test_is_root_of():
    sqrt2 = [r for r in descartes_isolate([-2, 0, 1]) if r.as_float() > 0][0]
    assert is_root_of(sqrt2, [-4, 0, 0, 0, 1])
    assert not is_root_of(sqrt2, [-3, 0, 1])
    assert is_root_of(sqrt2, [])
