"""Exact dense linear algebra over the Gaussian rationals.

Matrices are plain lists of rows.  Rank and determinant go through
fraction-free (Bareiss) elimination over the Gaussian integers after each
row has been cleared of denominators; inversion is ordinary Gauss-Jordan
over the field.
"""

from __future__ import annotations

from math import gcd
from typing import List, Sequence

from .gaussian import ONE, ZERO, GaussianRational, gq

Matrix = List[List[GaussianRational]]


class SingularMatrixError(ArithmeticError):
    """Raised when an exact inverse is requested for a singular matrix."""


def as_matrix(rows) -> Matrix:
    return [[gq(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def matmul(a: Sequence[Sequence[GaussianRational]], b: Sequence[Sequence[GaussianRational]]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0]) if b else 0}")
    cols = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if not x.is_zero()]
        new_row = []
        for col in cols:
            s = ZERO
            for k, x in nz:
                y = col[k]
                if not y.is_zero():
                    s = s + x * y
            new_row.append(s)
        out.append(new_row)
    return out


def conj_matrix(a) -> Matrix:
    return [[x.conjugate() for x in row] for row in a]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


# --- fraction-free elimination over Z[i] -------------------------------------


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators; entries become (a, b) pairs."""
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            d = x.parts[2]
            if d != 1:
                lcm = lcm * d // gcd(lcm, d)
        out.append([(a * (lcm // d), b * (lcm // d)) for a, b, d in (x.parts for x in row)])
    return out


def _bareiss(m):
    """In-place fraction-free echelon form; returns (rank, pivot product sign data).

    ``m`` holds Gaussian integers as (re, im) tuples.  Returns the rank and the
    last pivot (which equals the determinant up to row-swap sign for square
    full-rank input) together with the number of row swaps.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pa, pb = 1, 0  # previous pivot
    r = 0
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == (0, 0):
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            swaps += 1
        va, vb = m[r][c]
        prow = m[r]
        norm = pa * pa + pb * pb
        for i in range(r + 1, nrows):
            row = m[i]
            wa, wb = row[c]
            for j in range(c + 1, ncols):
                xa, xb = row[j]
                ya, yb = prow[j]
                # piv * x - w * y
                ta = va * xa - vb * xb - (wa * ya - wb * yb)
                tb = va * xb + vb * xa - (wa * yb + wb * ya)
                if pa == 1 and pb == 0:
                    row[j] = (ta, tb)
                else:
                    # exact division by previous pivot: t * conj(p) / |p|^2
                    row[j] = ((ta * pa + tb * pb) // norm, (tb * pa - ta * pb) // norm)
            row[c] = (0, 0)
        pa, pb = va, vb
        r += 1
    return r, (pa, pb), swaps


def rank(rows) -> int:
    """Exact rank over C of a matrix of GaussianRational entries."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return _bareiss(_integer_rows(rows))[0]


def det(rows) -> GaussianRational:
    """Exact determinant (fraction-free)."""
    n = len(rows)
    if n == 0:
        return ONE
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    scale = GaussianRational(1)
    int_rows = []
    for row in rows:
        lcm = 1
        for x in row:
            d = x.parts[2]
            lcm = lcm * d // gcd(lcm, d)
        scale = scale * GaussianRational.from_ints(1, 0, lcm)
        int_rows.append([(a * (lcm // d), b * (lcm // d)) for a, b, d in (x.parts for x in row)])
    r, (pa, pb), swaps = _bareiss(int_rows)
    if r < n:
        return ZERO
    value = GaussianRational.from_ints(pa, pb) * scale
    return -value if swaps % 2 else value


def inverse(rows) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises SingularMatrixError."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        p = c
        while p < n and aug[p][c].is_zero():
            p += 1
        if p == n:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        inv = aug[c][c].inverse()
        pivot_row = [x * inv for x in aug[c]]
        aug[c] = pivot_row
        nz = [(j, x) for j, x in enumerate(pivot_row) if not x.is_zero()]
        for i in range(n):
            if i == c:
                continue
            f = aug[i][c]
            if f.is_zero():
                continue
            row = aug[i]
            for j, x in nz:
                row[j] = row[j] - f * x
    return [row[n:] for row in aug]


def independent_rows(rows) -> List[int]:
    """Indices of a maximal independent subset, chosen greedily top to bottom.

    Row i is kept when it is not in the span of the rows kept before it, so the
    selection is deterministic.
    """
    chosen: List[int] = []
    basis = []  # rows in reduced form with pivot column
    for idx, row in enumerate(rows):
        v = list(row)
        for pc, b in basis:
            f = v[pc]
            if not f.is_zero():
                v = [x - f * y for x, y in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        if pc is None:
            continue
        inv = v[pc].inverse()
        v = [x * inv for x in v]
        # keep basis fully reduced so later pivots stay independent
        basis = [(q, [x - b[pc] * y for x, y in zip(b, v)]) for q, b in basis]
        basis.append((pc, v))
        chosen.append(idx)
    return chosen


def nullspace(rows, ncols: int | None = None) -> Matrix:
    """Basis (as rows) of the right kernel {v : A v = 0}."""
    a = [list(r) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row_idx, pc in enumerate(pivots):
            v[pc] = -a[row_idx][fc]
        basis.append(v)
    return basis
