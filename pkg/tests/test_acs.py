from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from nijrank.acs import (
    CoFrame,
    SingularDeformation,
    acs_from_real_j,
    conjugated_acs,
    coordinate_acs,
    deform,
    deformation_det,
    mu_bar,
    mu_bar_generic,
    nijenhuis_oracle,
    nijenhuis_rank,
    random_acs,
    rank_hook,
    real_j,
    relative_deformation,
    standard_acs,
)
from nijrank.gaussian import GaussianRational, format_gaussian, gq
from nijrank.salamon import parse_salamon

i = gq("i")
coeffs = st.builds(GaussianRational, st.fractions(-2, 2, max_denominator=3), st.fractions(-2, 2, max_denominator=3))


def test_standard_rows():
    assert standard_acs(2).rows == ((1, i, 0, 0), (0, 0, 1, i))
    assert standard_acs(3).rows[2] == (0, 0, 0, 0, 1, i)
    with pytest.raises(ValueError):
        standard_acs(0)


def test_deform_zero_is_identity():
    base = coordinate_acs([(2, 4), (1, 3)], [-1, 1])
    assert deform(base, [[0, 0], [0, 0]]) == base


def test_deform_iwasawa_rank2_coframe():
    J = deform(standard_acs(3), [[0, 0, 1], [0, 2, 0], [0, 0, 0]])
    # omega^1 = phi^1 + conj(phi^3), omega^2 = phi^2 + 2 conj(phi^2), omega^3 = phi^3
    assert J.rows == ((1, i, 0, 0, 1, -i), (0, 0, 3, -i, 0, 0), (0, 0, 0, 0, 1, i))


@pytest.mark.parametrize("phi", [[[1]], [[gq("3/5+4/5i")]], [[1, 0], [0, 0]], [[0, 0], [0, gq("-i")]]])
def test_singular_deformation(phi):
    assert deformation_det(phi).is_zero()
    with pytest.raises(SingularDeformation):
        deform(standard_acs(len(phi)), phi)


def test_deformation_det_value():
    # D = det(Id - Phi conj(Phi)) for the block matrix
    assert deformation_det([[gq("1/2")]]) == gq("3/4")
    assert deformation_det([[0, 2], [0, 0]]) == 1


def test_mu_bar_iwasawa(catalog):
    e = catalog.get("iwasawa")
    assert mu_bar(e.algebra, e.structure("standard").coframe).is_zero()
    M = mu_bar(e.algebra, e.structure("rank2").coframe)
    # frozen exact values for this real form of the algebra
    assert [[format_gaussian(x) for x in r] for r in M.entries] == [["-1/3", "0", "0"], ["0", "0", "0"], ["0", "0", "2/3"]]
    assert M.rank() == 2
    assert nijenhuis_rank(e.algebra, e.structure("rank1").coframe) == 1


def test_named_ranks(catalog):
    assert nijenhuis_rank(catalog.get("nakamura").algebra, catalog.get("nakamura").structure("rank3").coframe) == 3
    kt = catalog.get("kt").algebra
    assert nijenhuis_rank(kt, deform(standard_acs(2), [[0, gq("1/3")], [0, 0]])) == 1
    assert nijenhuis_rank(kt, deform(standard_acs(2), [[gq("1/2"), 0], [gq("i"), 0]])) == 0


def test_kt_mu_bar_formulas(catalog):
    # Phi = [[0, f], [0, h]]: coefficients -i f^2 / (2D) and -i f (1 + h) / (2D), up to one common factor
    g = catalog.get("kt").algebra
    for f, h in [(gq("1/2"), gq(0)), (gq("1+i"), gq("1/3")), (gq("-2"), gq("1/2i"))]:
        phi = [[0, f], [0, h]]
        D = deformation_det(phi)
        M = mu_bar(g, deform(standard_acs(2), phi))
        ratio = M.entries[0][0] / (-i * f * f / (2 * D))
        assert M.entries[1][0] == ratio * (-i * f * (1 + h) / (2 * D))


@st.composite
def structures(draw, m):
    phi = [[draw(st.one_of(st.just(GaussianRational(0)), coeffs)) for _ in range(m)] for _ in range(m)]
    if deformation_det(phi).is_zero():
        phi = [[0] * m for _ in range(m)]
    return deform(standard_acs(m), phi)


@pytest.mark.parametrize("name", ["n6-02", "n6-21", "iwasawa", "nakamura", "n6-24", "kt-real"])
@given(data=st.data())
def test_mu_bar_routes_agree(catalog, name, data):
    g = catalog.get(name).algebra
    J = data.draw(structures(g.dim // 2))
    M = mu_bar(g, J)
    assert M == mu_bar_generic(g, J)
    assert M.rank() == nijenhuis_oracle(g, real_j(J))


def _nijenhuis_real_rank(g, Jm):
    """Real rank of (X, Y) -> N(X, Y) over all basis pairs, computed with sympy."""
    n = g.dim
    J = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in Jm])
    consts = [[sp.Rational(c.numerator, c.denominator) for c in (eq.get((k, l), 0) for eq in g.structure)] for k in range(1, n + 1) for l in range(1, n + 1)]

    def br(x, y):
        # [e_k, e_l] = -sum_a c^a_kl e_a
        out = sp.zeros(n, 1)
        for k in range(n):
            for l in range(k + 1, n):
                c = x[k] * y[l] - x[l] * y[k]
                if c != 0:
                    out -= c * sp.Matrix(consts[k * n + l])
        return out

    cols = []
    for k in range(n):
        for l in range(k + 1, n):
            x, y = sp.eye(n)[:, k], sp.eye(n)[:, l]
            cols.append(br(J * x, J * y) - J * br(J * x, y) - J * br(x, J * y) - br(x, y))
    return sp.Matrix.hstack(*cols).rank()


@pytest.mark.parametrize("name", ["n6-01", "n6-14", "iwasawa", "nakamura", "kt"])
def test_rank_equals_half_real_rank_of_nijenhuis_tensor(catalog, name):
    e = catalog.get(name)
    rng = np.random.default_rng(5)
    fixtures = [s.coframe for s in e.structures] + list(e.witnesses.values())
    for J in fixtures + [random_acs(e.algebra.dim // 2, rng) for _ in range(3)]:
        assert 2 * nijenhuis_rank(e.algebra, J) == _nijenhuis_real_rank(e.algebra, real_j(J).matrix)


def test_real_j():
    J = real_j(standard_acs(1))
    # e^1 + i e^2 is (1,0): e^1 o J = -e^2, e^2 o J = e^1
    assert J.matrix == ((0, -1), (1, 0))
    assert J.is_complex_structure()
    assert acs_from_real_j(J).same_structure(standard_acs(1))


@given(structures(3))
def test_real_j_round_trip(W):
    J = real_j(W)
    assert J.is_complex_structure()
    assert acs_from_real_j(J).same_structure(W)


def test_real_j_of_rank2_structure(catalog):
    J = real_j(catalog.get("iwasawa").structure("rank2").coframe)
    assert J.is_complex_structure()
    assert all(isinstance(x, Fraction) for row in J.matrix for x in row)


def test_conjugated_structure():
    rng = np.random.default_rng(3)
    for _ in range(20):
        Q = rng.integers(-3, 4, size=(4, 4)).tolist()
        try:
            W = conjugated_acs(Q)
        except ArithmeticError:
            continue
        assert real_j(W).is_complex_structure()
    with pytest.raises(ValueError):
        acs_from_real_j([[1, 0], [0, 1]])


def test_relative_deformation():
    rng = np.random.default_rng(11)
    base = coordinate_acs([(1, 4), (3, 2), (5, 6)], [1, -1, 1])
    for _ in range(10):
        target = random_acs(3, rng, "conjugate", 3)
        phi = relative_deformation(base, target)
        if phi is not None:
            assert deform(base, phi).same_structure(target)
    assert relative_deformation(standard_acs(1), CoFrame([[1, gq("-i")]])) is None


def test_oracle_on_abelian_and_iwasawa(catalog):
    ab = parse_salamon("(0,0,0,0,0,0)")
    rng = np.random.default_rng(1)
    for _ in range(10):
        assert nijenhuis_oracle(ab, real_j(random_acs(3, rng, "conjugate"))) == 0
    e = catalog.get("iwasawa")
    assert nijenhuis_oracle(e.algebra, real_j(e.structure("rank2").coframe)) == 2


def test_random_acs_is_seeded():
    a = random_acs(3, 42, "deform")
    assert a == random_acs(3, 42, "deform")
    assert random_acs(3, 42, "conjugate") == random_acs(3, 42, "conjugate")
    with pytest.raises(ValueError):
        random_acs(3, 0, "other")


def test_torus_always_integrable():
    g = parse_salamon("(0,0,0,0,0,0)")
    rng = np.random.default_rng(0)
    for t in range(10_000):
        assert nijenhuis_rank(g, random_acs(3, rng, "deform" if t % 2 else "conjugate")) == 0


def test_iwasawa_never_maximal(catalog):
    g = catalog.get("iwasawa").algebra
    rng = np.random.default_rng(1)
    assert max(nijenhuis_rank(g, random_acs(3, rng, "conjugate")) for _ in range(10_000)) <= 2


def test_rank_hook():
    g = parse_salamon("(0,0,0,-23)")
    seen = []
    with rank_hook(lambda alg, J, r: seen.append(r)):
        nijenhuis_rank(g, standard_acs(2))
    nijenhuis_rank(g, standard_acs(2))
    assert len(seen) == 1
