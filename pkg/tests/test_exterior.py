import pytest
from hypothesis import given
from hypothesis import strategies as st

from nijrank.acs import deform, deformation_det, standard_acs
from nijrank.exterior import (
    FrameMatrix,
    KForm,
    LieAlgebra,
    bidegree_project,
    change_frame,
    check_jacobi,
    conjugate,
    differential,
    from_complex_frame,
    from_frame,
    wedge,
)
from nijrank.gaussian import GaussianRational, gq
from nijrank.salamon import format_salamon, parse_salamon
from nijrank.survey import betti1

N = 6
coeffs = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-3, 3))


@st.composite
def forms(draw, degree, dim=N):
    idx = st.lists(st.integers(1, dim), min_size=degree, max_size=degree, unique=True).map(tuple)
    terms = draw(st.dictionaries(idx, coeffs, max_size=4))
    return KForm(dim, degree, terms)


def e(*idx, c=1, dim=N):
    return KForm.basis(dim, *idx, coeff=c)


def test_wedge_basics():
    assert wedge(e(1), e(1)).is_zero()
    assert wedge(e(1), e(2)) == e(1, 2)
    assert wedge(e(2), e(1)) == e(1, 2, c=-1)


def test_wedge_of_complex_one_forms():
    a = KForm.one_form([1, gq("i"), 0, 0])
    b = KForm.one_form([0, 0, 1, gq("i")])
    got = wedge(a, b)
    # independent expansion: (a ^ b)_{kl} = a_k b_l - a_l b_k
    ac = [1, gq("i"), 0, 0]
    bc = [0, 0, 1, gq("i")]
    expected = KForm(4, 2, {(k + 1, l + 1): gq(ac[k]) * gq(bc[l]) - gq(ac[l]) * gq(bc[k]) for k in range(4) for l in range(k + 1, 4)})
    assert got == expected
    assert got == KForm(4, 2, {(1, 3): 1, (1, 4): gq("i"), (2, 3): gq("i"), (2, 4): -1})


@given(forms(1), forms(2), forms(1))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(1), forms(2))
def test_graded_commutative(a, b):
    assert wedge(a, b) == wedge(b, a)
    assert wedge(a, a).is_zero()


def test_conjugate():
    assert conjugate(e(1, c=gq("i"))) == e(1, c=gq("-i"))
    phi = KForm.one_form([1, gq("i")])
    assert conjugate(phi) == KForm.one_form([1, gq("-i")])


@given(forms(2))
def test_conjugate_involution(a):
    assert conjugate(conjugate(a)) == a


def test_kt_differential():
    g = parse_salamon("(0,0,0,-23)")
    assert differential(g, e(4, dim=4)) == e(2, 3, c=-1, dim=4)


@pytest.mark.parametrize("name", ["n6-01", "n6-14", "iwasawa", "nakamura", "n6-24"])
@given(data=st.data())
def test_d_squared_and_leibniz(catalog, name, data):
    g = catalog.get(name).algebra
    a = data.draw(forms(1))
    b = data.draw(forms(2))
    assert differential(g, differential(g, a)).is_zero()
    assert differential(g, differential(g, b)).is_zero()
    lhs = differential(g, wedge(a, b))
    rhs = wedge(differential(g, a), b) - wedge(a, differential(g, b))
    assert lhs == rhs


def test_jacobi_ok_on_catalog(catalog):
    for entry in catalog:
        assert check_jacobi(entry.algebra) is None, entry.name


def test_jacobi_violation():
    # de5 = e12, de6 = e35: d(de6) = -e3 ^ de5 = -e123
    g = parse_salamon("(0,0,0,0,12,35)", check=False)
    v = check_jacobi(g)
    assert v is not None and v.index == 6
    assert v.form == e(1, 2, 3, c=-1)
    assert check_jacobi(LieAlgebra(6, [{}] * 6)) is None


def test_frame_change_round_trip():
    M = FrameMatrix([[1, gq("i"), 0, 0], [0, 0, 1, gq("i")], [1, gq("-i"), 0, 0], [0, 0, 1, gq("-i")]])
    a = KForm(4, 2, {(1, 2): 3, (2, 4): gq("1-i"), (3, 4): gq("1/2")})
    assert from_frame(change_frame(a, M), M) == a
    ident = FrameMatrix([[int(i == j) for j in range(4)] for i in range(4)])
    assert change_frame(a, ident) == a


@given(forms(2), st.data())
def test_bidegree_parts_sum(a, data):
    phi = [[data.draw(coeffs) / 4 for _ in range(3)] for _ in range(3)]
    if deformation_det(phi).is_zero():
        return
    J = deform(standard_acs(3), phi)
    total = bidegree_project(a, J, 2, 0) + bidegree_project(a, J, 1, 1) + bidegree_project(a, J, 0, 2)
    assert total == a


def test_bidegree_of_pure_form():
    J = standard_acs(2)
    M = J.frame_matrix()
    w = from_frame(KForm(4, 2, {(3, 4): 1}), M)  # conj(phi^1) ^ conj(phi^2)
    assert bidegree_project(w, J, 0, 2) == w
    assert bidegree_project(w, J, 2, 0).is_zero()


def test_kt_zero_two_part_coefficient():
    # omega^1 = phi^1 + f conj(phi^2): (phi^{1 bar1})^{0,2} is (f/D) omega^{bar1 bar2}
    f = gq("2+i")
    phi = [[0, f], [0, 0]]
    J = deform(standard_acs(2), phi)
    D = deformation_det(phi)
    p1 = KForm.one_form([1, gq("i"), 0, 0])
    part = bidegree_project(wedge(p1, conjugate(p1)), J, 0, 2)
    assert change_frame(part, J.frame_matrix()) == KForm(4, 2, {(3, 4): f / D})


def _phi_form(m, terms):
    return KForm(2 * m, 2, terms)


def test_iwasawa_from_complex_frame():
    g, std = from_complex_frame(3, [_phi_form(3, {}), _phi_form(3, {}), _phi_form(3, {(1, 2): -1})])
    assert format_salamon(g) == "(0,0,0,0,-13+24,-14-23)"
    # e5 -> -e5, e6 -> -e6 gives the usual real form
    assert format_salamon(parse_salamon("(0,0,0,0,13-24,14+23)")) == "(0,0,0,0,13-24,14+23)"
    phi = [KForm.one_form(row) for row in std.rows]
    dphi3 = differential(g, phi[2])
    assert dphi3 == -wedge(phi[0], phi[1])


def test_kt_from_complex_frame():
    g, _ = from_complex_frame(2, [_phi_form(2, {}), _phi_form(2, {(1, 3): gq("-1/2i")})])
    assert format_salamon(g) == "(0,0,-12,0)"
    assert betti1(g) == 3


def test_zero_complex_frame_is_abelian():
    g, std = from_complex_frame(3, [_phi_form(3, {})] * 3)
    assert format_salamon(g) == "(0,0,0,0,0,0)"
    assert std == standard_acs(3)


def test_iwasawa_frame_change_coefficient():
    J = deform(standard_acs(3), [[0, 0, 1], [0, 2, 0], [0, 0, 0]])
    p = [KForm.one_form(r) for r in standard_acs(3).rows]
    a = change_frame(wedge(p[0], p[1]), J.frame_matrix())
    # frame order omega^1..omega^3, conj(omega^1)..conj(omega^3)
    assert a.terms[(5, 6)] == gq("2/3")
    assert from_frame(a, J.frame_matrix()) == wedge(p[0], p[1])
