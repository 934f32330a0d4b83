import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from nijrank import linalg
from nijrank.gaussian import GaussianRational, gq

small = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-2, 2))


@st.composite
def matrices(draw, square=False):
    n = draw(st.integers(1, 4))
    m = n if square else draw(st.integers(1, 5))
    # a zero-heavy mix so rank deficiencies actually occur
    entry = st.one_of(st.just(GaussianRational(0)), small)
    return [[draw(entry) for _ in range(m)] for _ in range(n)]


def _sympy(rows):
    return sp.Matrix([[sp.Rational(x.re) + sp.I * sp.Rational(x.im) for x in r] for r in rows])


def _from_sympy(z):
    re, im = sp.re(z), sp.im(z)
    return gq(f"{re}") + gq(f"{im}") * gq("i")


@given(matrices())
def test_rank_matches_sympy(rows):
    assert linalg.rank(rows) == _sympy(rows).rank()


@given(matrices(square=True))
def test_det_matches_sympy(rows):
    assert linalg.det(rows) == _from_sympy(sp.expand(_sympy(rows).det()))


@given(matrices(square=True))
def test_inverse(rows):
    if linalg.det(rows).is_zero():
        with pytest.raises(linalg.SingularMatrixError):
            linalg.inverse(rows)
        return
    inv = linalg.inverse(rows)
    assert linalg.matmul(rows, inv) == linalg.identity(len(rows))


@given(matrices())
def test_nullspace(rows):
    ncols = len(rows[0])
    basis = linalg.nullspace(rows, ncols)
    assert len(basis) == ncols - linalg.rank(rows)
    for v in basis:
        assert all(sum((r[j] * v[j] for j in range(ncols)), GaussianRational(0)).is_zero() for r in rows)


@given(matrices())
def test_independent_rows(rows):
    picked = linalg.independent_rows(rows)
    assert len(picked) == linalg.rank(rows) == linalg.rank([rows[i] for i in picked])


def test_gaussian_entries():
    rows = [[gq(1), gq("i")], [gq("i"), gq(-1)]]
    assert linalg.rank(rows) == 1
    assert linalg.det(rows).is_zero()
