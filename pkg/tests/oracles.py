"""Independent brute-force oracles used by the test suite.

These deliberately avoid the library's modular pipeline: determinants are
computed by fraction-free (Bareiss) elimination directly on matrices with
integer-polynomial entries.
"""

from fractions import Fraction

from curvekit import upoly
from curvekit.bivpoly import BivPoly


def poly_matrix_det(rows):
    """Bareiss fraction-free determinant of a matrix of IntPoly entries."""
    n = len(rows)
    m = [[list(e) for e in row] for row in rows]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return []
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly.sub(upoly.mul(m[k][k], m[i][j]),
                                upoly.mul(m[i][k], m[k][j]))
                q = upoly.divexact(num, prev)
                assert q is not None, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = []
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return upoly.neg(det) if sign < 0 else det


def sylvester_matrix_y(f: BivPoly, g: BivPoly):
    """Sylvester matrix of f, g as polynomials in y; entries are x-polys."""
    fc = f.coeffs_wrt_y()
    gc = g.coeffs_wrt_y()
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [[] for _ in range(size)]
        for k in range(m + 1):
            row[i + k] = list(fc[m - k])
        rows.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for k in range(n + 1):
            row[i + k] = list(gc[n - k])
        rows.append(row)
    return rows


def resultant_oracle_y(f: BivPoly, g: BivPoly):
    """res(f, g; y) via the fraction-free Sylvester determinant."""
    m, n = f.deg_y(), g.deg_y()
    if m == 0 and n == 0:
        return [1]
    if m == 0:
        return upoly.pow_(f.coeffs_wrt_y()[0], n)
    if n == 0:
        return upoly.pow_(g.coeffs_wrt_y()[0], m)
    return poly_matrix_det(sylvester_matrix_y(f, g))


def int_det(rows):
    """Bareiss determinant of an integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def eval_poly_fraction(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc
