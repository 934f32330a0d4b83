import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from nijrank.acs import random_acs, real_j, standard_acs
from nijrank.checks import check_bound_hook, invariant_plane_j, projection01, run_all, _BoundHook
from nijrank.gaussian import I, gq

pairs = st.integers(2, 3).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.integers(0, 2 * m - 1), min_size=2, max_size=2, unique=True), st.integers(0, 10**6))
)


def _is_01(J, row):
    # a (0,1)-form eta satisfies eta o J = -i eta
    n = J.n
    return all(sum((row[b] * J.matrix[b][c] for b in range(n)), gq(0)) == -I * row[c] for c in range(n))


def test_projection_of_standard_structure():
    J = real_j(standard_acs(1))
    assert projection01(J, 0) == [gq("1/2"), gq("-1/2i")]


@given(pairs)
def test_invariant_plane_j(data):
    m, (j, k), seed = data
    J = invariant_plane_j(m, j, k, np.random.default_rng(seed))
    assert J.is_complex_structure()
    for a in (j, k):
        assert all(J.matrix[a][b] == 0 for b in range(2 * m) if b not in (j, k))
    u, v = projection01(J, j), projection01(J, k)
    assert _is_01(J, u) and _is_01(J, v)
    # proportional rows
    assert all(u[p] * v[q] == u[q] * v[p] for p in range(2 * m) for q in range(2 * m))


@given(st.integers(0, 10**6))
def test_projection_is_01(seed):
    J = real_j(random_acs(3, np.random.default_rng(seed), "conjugate", magnitude=3))
    for a in range(6):
        assert _is_01(J, projection01(J, a))


def test_bound_hook_flags_violations():
    hook = _BoundHook()
    assert not check_bound_hook(hook)["ok"]


def test_run_all_subset_and_note(catalog):
    r = run_all(catalog, attempts=100, only=["explicit-examples", "nakamura-curve"])
    assert r["ok"]
    assert [c["name"] for c in r["checks"]] == ["explicit-examples", "nakamura-curve", "bound-invariant"]
    assert r["notes"]


def test_run_all_reports_crash(catalog, monkeypatch):
    import nijrank.checks as checks

    def boom(_catalog):
        raise RuntimeError("broken")

    monkeypatch.setattr(checks, "check_examples", boom)
    r = checks.run_all(catalog, only=["explicit-examples"])
    # nothing was evaluated, so the bound check has no evidence either
    assert r["failed"] == ["explicit-examples", "bound-invariant"]
    assert "RuntimeError: broken" in r["checks"][0]["failures"][0]
    assert not r["notes"]
