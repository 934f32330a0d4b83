"""Reproducibility checks behind ``nijrank verify-paper`` and the acceptance tests.

Each ``check_*`` function returns a JSON-ready dict with at least ``name``
and ``ok``.  :func:`run_all` runs them all under a rank hook that asserts
``rank <= dim - b1`` on every evaluation.  Everything runs in-process so the
hook sees every structure.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import linalg
from .acs import (
    CoFrame,
    RealJ,
    SingularDeformation,
    acs_from_real_j,
    deform,
    mu_bar,
    nijenhuis_oracle,
    nijenhuis_rank,
    random_acs,
    rank_hook,
    real_j,
    standard_acs,
)
from .catalog import Catalog, catalog_selftest, load_catalog
from .exterior import KForm, bidegree_project, check_jacobi
from .gaussian import I, ZERO, GaussianRational, format_gaussian, gq
from .salamon import format_salamon, parse_salamon
from .survey import Curve, betti1, curve_eval, curve_profile, verify_classification

__all__ = [
    "check_bound_hook",
    "check_classification",
    "check_curve_lower_bound",
    "check_examples",
    "check_io",
    "check_kt_law",
    "check_lemmas",
    "check_nakamura_curve",
    "check_oracle",
    "check_selftest",
    "invariant_plane_j",
    "nakamura_curve",
    "projection01",
    "run_all",
]

FULL_ATTEMPTS = 10_000

# tags that keep the random streams of the individual checks apart
_ORACLE, _CURVES, _LEMMAS, _IO = 11, 12, 13, 14


def _rng(seed: int, tag: int):
    return np.random.default_rng([int(seed), tag])


def _result(name: str, failures: List[str], **extra) -> dict:
    out = {"name": name, "ok": not failures, "failures": failures}
    out.update(extra)
    return out


# --- fixtures -----------------------------------------------------------------------


def check_selftest(catalog: Catalog) -> dict:
    r = catalog_selftest(catalog)
    return _result("catalog-selftest", list(r["failures"]), entries=r["entries"], fixtures=r["fixtures"])


_EXAMPLES = (
    ("iwasawa", "standard", 0),
    ("iwasawa", "rank2", 2),
    ("iwasawa", "rank1", 1),
    ("nakamura", "rank3", 3),
    ("nakamura", "rank2", 2),
    ("nakamura", "rank1", 1),
    ("kt", "complex_J0", 0),
)


def check_examples(catalog: Catalog) -> dict:
    """The printed example structures have their stated ranks."""
    failures = []
    rows = []
    for name, label, expected in _EXAMPLES:
        try:
            e = catalog.get(name)
            s = e.structure(label)
        except KeyError as exc:
            failures.append(str(exc))
            continue
        r = nijenhuis_rank(e.algebra, s.coframe)
        rows.append({"entry": name, "structure": label, "expected": expected, "rank": r})
        if r != expected:
            failures.append(f"{name}/{label}: rank {r}, expected {expected}")
    return _result("explicit-examples", failures, examples=rows)


# --- Kodaira-Thurston -------------------------------------------------------------

_KT_VALUES = (
    ZERO,
    GaussianRational(Fraction(1, 2)),
    GaussianRational(Fraction(-1, 3)),
    GaussianRational(0, 2),
    GaussianRational(Fraction(1, 2), Fraction(1, 3)),
)


def check_kt_law(catalog: Catalog) -> dict:
    """Over a grid of constant ``Phi = [[e, f], [g, h]]``: rank 0 iff ``f = 0``."""
    g = catalog.get("kt").algebra
    base = standard_acs(2)
    failures = []
    tested = 0
    for e in _KT_VALUES:
        for f in _KT_VALUES:
            for gg in _KT_VALUES:
                for h in _KT_VALUES:
                    try:
                        J = deform(base, [[e, f], [gg, h]])
                    except SingularDeformation:
                        continue
                    tested += 1
                    r = nijenhuis_rank(g, J)
                    if (r == 0) != f.is_zero():
                        failures.append(f"e={e} f={f} g={gg} h={h}: rank {r}")
    if tested < 500:
        failures.append(f"only {tested} non-singular grid points")
    return _result("kt-law", failures, tested=tested)


# --- Nakamura curve ---------------------------------------------------------------

NAKAMURA_DIRECTION = (
    (0, 1, 1),
    (0, Fraction(1, 2), 0),
    (0, 0, Fraction(1, 2)),
)


def nakamura_curve() -> Curve:
    """Curve from the standard structure towards the maximal-rank one."""
    return Curve(standard_acs(3), NAKAMURA_DIRECTION)


def check_nakamura_curve(catalog: Catalog) -> dict:
    g = catalog.get("nakamura").algebra
    c = nakamura_curve()
    failures = []
    samples = [0, Fraction(1, 4), Fraction(1, 2), 1, Fraction(3, 2)]
    ranks = [curve_eval(g, c, s) for s in samples]
    if ranks != [0, 3, 3, 3, 3]:
        failures.append(f"ranks {ranks}, expected [0, 3, 3, 3, 3]")
    at2 = curve_eval(g, c, 2)
    if at2 != "singular":
        failures.append(f"s = 2 gave {at2}, expected singular")
    ratios = []
    for s in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        coeff = mu_bar(g, c.at(s)).entry(1, 1, 2)
        ratios.append(coeff / gq(-4 * s / (4 - s * s)))
    if any(x != ratios[0] for x in ratios):
        failures.append(f"normalization differs across s: {[format_gaussian(x) for x in ratios]}")
    prof = curve_profile(g, c, samples)
    if prof.verdict != "pass":
        failures.append("semi-continuity verdict failed")
    return _result(
        "nakamura-curve",
        failures,
        ranks=ranks,
        normalization=format_gaussian(ratios[0]),
    )


# --- oracle, curves ------------------------------------------------------------------


def _even(catalog: Catalog):
    return [e for e in catalog if e.algebra.dim % 2 == 0]


def _random_structure(m: int, rng) -> CoFrame:
    mode = "deform" if rng.random() < 0.5 else "conjugate"
    return random_acs(m, rng, mode, magnitude=3)


def check_oracle(catalog: Catalog, seed: int = 0, count: int = 200) -> dict:
    """mu_bar rank equals the bracket-oracle rank on random structures.

    Half the structures are sampled freshly; half are catalog fixtures, so
    low ranks are covered too.
    """
    rng = _rng(seed, _ORACLE)
    entries = _even(catalog)
    fixtures = [(e, s.coframe) for e in entries for s in e.structures] + [
        (e, J) for e in entries for J in e.witnesses.values()
    ]
    failures = []
    seen: Dict[int, int] = {}
    for t in range(count):
        if t % 2 and fixtures:
            e, J = fixtures[int(rng.integers(len(fixtures)))]
        else:
            e = entries[int(rng.integers(len(entries)))]
            J = _random_structure(e.algebra.dim // 2, rng)
        r = nijenhuis_rank(e.algebra, J)
        o = nijenhuis_oracle(e.algebra, real_j(J))
        seen[r] = seen.get(r, 0) + 1
        if r != o:
            failures.append(f"{e.name}: mu_bar rank {r}, oracle {o} for {J!r}")
    return _result("oracle-equivalence", failures, pairs=count, ranks={str(k): seen[k] for k in sorted(seen)})


def _random_rational(rng, top: int = 4) -> Fraction:
    while True:
        x = Fraction(int(rng.integers(-top, top + 1)), int(rng.integers(1, top + 1)))
        if x:
            return x


def check_curve_lower_bound(catalog: Catalog, seed: int = 0, curves: int = 100, samples: int = 5) -> dict:
    """``rank(s) >= max(rank(0), rank(1))`` at random non-singular samples.

    Curves start from catalog fixtures or random structures and move in a
    random sparse direction.
    """
    rng = _rng(seed, _CURVES)
    entries = _even(catalog)
    failures = []
    exceptional = []
    checked = 0
    for _ in range(curves):
        e = entries[int(rng.integers(len(entries)))]
        m = e.algebra.dim // 2
        bases = [s.coframe for s in e.structures] + list(e.witnesses.values())
        base = bases[int(rng.integers(len(bases)))] if bases and rng.random() < 0.75 else _random_structure(m, rng)
        phi = [[ZERO] * m for _ in range(m)]
        for pos in rng.choice(m * m, size=int(rng.integers(1, m * m + 1)), replace=False):
            phi[int(pos) // m][int(pos) % m] = GaussianRational(_random_rational(rng), _random_rational(rng) if rng.random() < 0.5 else 0)
        c = Curve(base, tuple(tuple(r) for r in phi))
        points = []
        while len(points) < samples:
            s = gq(_random_rational(rng))
            if not c.det(s).is_zero():
                points.append(s)
        prof = curve_profile(e.algebra, c, points)
        checked += len(points)
        for s in prof.violations:
            failures.append(f"{e.name}: rank at s={s} below floor {prof.floor}")
        for s in prof.exceptional:
            exceptional.append(f"{e.name}: s={s} is a special point (generic rank {prof.generic})")
    return _result("curve-lower-bound", failures, curves=curves, samples=checked, exceptional=exceptional)


# --- lemma properties ----------------------------------------------------------------


def projection01(J: RealJ, j: int):
    """``(e^j)^{0,1} = (e^j + i e^j o J) / 2`` as a coefficient row in the e-basis (0-based ``j``)."""
    half = GaussianRational(Fraction(1, 2))
    return [half * (GaussianRational(1 if b == j else 0) + I * GaussianRational(J.matrix[j][b])) for b in range(J.n)]


def invariant_plane_j(m: int, j: int, k: int, rng) -> RealJ:
    """Random real J for which ``<e^j, e^k>`` is J-invariant (0-based indices).

    In coordinates ordered ``(j, k, rest)`` it is ``[[A, 0], [X A - B X, B]]``
    with ``A^2 = B^2 = -1``, which squares to ``-1`` for every X.
    """
    n = 2 * m
    a = _random_rational(rng, 3) if rng.random() < 0.75 else Fraction(0)
    b = _random_rational(rng, 3)
    A = [[a, b], [-(1 + a * a) / b, -a]]
    rest = [p for p in range(n) if p not in (j, k)]
    r = n - 2
    B = [[Fraction(0)] * r for _ in range(r)]
    if r:
        while True:
            Q = [[int(x) for x in row] for row in rng.integers(-3, 4, size=(r, r))]
            if not linalg.det(linalg.as_matrix(Q)).is_zero():
                break
        qinv = [[x.re for x in row] for row in linalg.inverse(linalg.as_matrix(Q))]
        J0 = [[Fraction(0)] * r for _ in range(r)]
        for t in range(0, r, 2):
            J0[t + 1][t] = Fraction(1)
            J0[t][t + 1] = Fraction(-1)
        QJ = [[sum(Fraction(Q[p][s]) * J0[s][q] for s in range(r)) for q in range(r)] for p in range(r)]
        B = [[sum(QJ[p][s] * qinv[s][q] for s in range(r)) for q in range(r)] for p in range(r)]
    X = [[Fraction(int(x)) for x in row] for row in rng.integers(-2, 3, size=(r, 2))]
    XA = [[sum(X[p][s] * A[s][q] for s in range(2)) for q in range(2)] for p in range(r)]
    BX = [[sum(B[p][s] * X[s][q] for s in range(r)) for q in range(2)] for p in range(r)]
    C = [[XA[p][q] - BX[p][q] for q in range(2)] for p in range(r)]
    order = [j, k] + rest
    block = [[Fraction(0)] * n for _ in range(n)]
    for p in range(2):
        for q in range(2):
            block[p][q] = A[p][q]
    for p in range(r):
        for q in range(2):
            block[2 + p][q] = C[p][q]
        for q in range(r):
            block[2 + p][2 + q] = B[p][q]
    M = [[Fraction(0)] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            M[order[p]][order[q]] = block[p][q]
    J = RealJ(tuple(tuple(row) for row in M))
    assert J.is_complex_structure()
    return J


def _lemma_instance(rng):
    """A random ``(J, j, k)`` with ``m`` in {2, 3}; about half have ``<e^j, e^k>`` invariant."""
    m = int(rng.integers(2, 4))
    j, k = (int(x) for x in sorted(rng.choice(2 * m, size=2, replace=False)))
    if rng.random() < 0.5:
        J = invariant_plane_j(m, j, k, rng)
    else:
        J = real_j(_random_structure(m, rng))
    return m, J, j, k


def _proportional(u, v) -> bool:
    return linalg.rank([u, v]) <= 1


def check_lemmas(seed: int = 0, count: int = 1000) -> dict:
    """The three structural lemmas on ``count`` random instances each.

    * ``(e^{jk})^{0,2} = 0`` exactly when ``(e^j)^{0,1}`` and ``(e^k)^{0,1}``
      are proportional;
    * proportional projections force ``J^k_k = -J^j_j``,
      ``(J^j_j)^2 + J^j_k J^k_j = -1`` and ``J^j_p = J^k_p = 0`` otherwise;
    * any three projections span a space of dimension at least 2.
    """
    rng = _rng(seed, _LEMMAS)
    failures: List[str] = []
    hits = {"proportional": 0, "dependent": 0}
    for _ in range(count):
        m, J, j, k = _lemma_instance(rng)
        W = acs_from_real_j(J)
        form = KForm(2 * m, 2, {(j + 1, k + 1): 1})
        vanishes = bidegree_project(form, W, 0, 2).is_zero()
        prop = _proportional(projection01(J, j), projection01(J, k))
        hits["proportional"] += vanishes
        if vanishes != prop:
            failures.append(f"proportional: j={j + 1} k={k + 1} (0,2)-part zero={vanishes}, proportional={prop}")
    for _ in range(count):
        m, J, j, k = _lemma_instance(rng)
        if not _proportional(projection01(J, j), projection01(J, k)):
            continue
        hits["dependent"] += 1
        a = J.matrix
        ok = (
            a[k][k] == -a[j][j]
            and a[j][j] ** 2 + a[j][k] * a[k][j] == -1
            and all(a[j][p] == 0 and a[k][p] == 0 for p in range(2 * m) if p not in (j, k))
        )
        if not ok:
            failures.append(f"dependent: j={j + 1} k={k + 1} identities fail for {a}")
    for _ in range(count):
        m, J, j, k = _lemma_instance(rng)
        others = [p for p in range(2 * m) if p not in (j, k)]
        third = others[int(rng.integers(len(others)))]
        trio = [projection01(J, p) for p in (j, k, third)]
        if linalg.rank(trio) < 2:
            failures.append(f"independent: indices {j + 1},{k + 1},{third + 1} span less than 2")
    if not hits["proportional"] or not hits["dependent"]:
        failures.append(f"hypotheses never exercised: {hits}")
    return _result("lemma-properties", failures, instances=count, exercised=hits)


# --- I/O -------------------------------------------------------------------------------


def check_io(catalog: Catalog, seed: int = 0) -> dict:
    """Salamon round trip and Jacobi on every entry; JSON reports are byte-stable."""
    failures = []
    for e in catalog:
        g = e.algebra
        if check_jacobi(g) is not None:
            failures.append(f"{e.name}: Jacobi fails")
        try:
            text = format_salamon(g)
        except ValueError:
            continue
        back = parse_salamon(text)
        if back != g or format_salamon(back) != text:
            failures.append(f"{e.name}: Salamon round trip changed {text}")
    names = [e.name for e in sorted(_even(catalog), key=lambda e: e.algebra.dim)][:2]
    runs = [
        json.dumps(verify_classification(catalog, attempts=30, existence_attempts=30, seed=seed, workers=1, names=names), sort_keys=True)
        for _ in range(2)
    ]
    if runs[0] != runs[1]:
        failures.append("classification report differs between identical runs")
    return _result("io-roundtrip", failures, entries=len(catalog))


# --- classification and the global bound -------------------------------------------


def check_classification(catalog: Catalog, attempts: int, existence_attempts: int, seed: int) -> dict:
    r = verify_classification(catalog, attempts, existence_attempts, seed, workers=1)
    return _result("classification", list(r["failures"]), attempts=attempts, existence_attempts=existence_attempts, entries=r["entries"])


class _BoundHook:
    def __init__(self):
        self.evaluations = 0
        self.violations: List[str] = []
        self._bounds: Dict[int, tuple] = {}

    def __call__(self, g, J, r):
        self.evaluations += 1
        key = id(g)
        if key not in self._bounds:
            self._bounds[key] = (g, g.dim - betti1(g))
        bound = self._bounds[key][1]
        if r > bound:
            self.violations.append(f"{g.name or format_salamon(g)}: rank {r} > {bound}")


def check_bound_hook(hook: _BoundHook) -> dict:
    failures = list(hook.violations)
    if not hook.evaluations:
        failures.append("no rank evaluations observed")
    return _result("bound-invariant", failures, evaluations=hook.evaluations)


def run_all(
    catalog: Optional[Catalog] = None,
    attempts: int = FULL_ATTEMPTS,
    existence_attempts: int = 1000,
    seed: int = 0,
    only: Optional[Sequence[str]] = None,
) -> dict:
    """Run every check; ``ok`` is true only when all pass.

    ``only`` restricts the run to the named checks (the bound invariant is
    always reported).
    """
    catalog = load_catalog() if catalog is None else catalog
    plan = [
        ("catalog-selftest", lambda: check_selftest(catalog)),
        ("explicit-examples", lambda: check_examples(catalog)),
        ("kt-law", lambda: check_kt_law(catalog)),
        ("nakamura-curve", lambda: check_nakamura_curve(catalog)),
        ("oracle-equivalence", lambda: check_oracle(catalog, seed)),
        ("curve-lower-bound", lambda: check_curve_lower_bound(catalog, seed)),
        ("lemma-properties", lambda: check_lemmas(seed)),
        ("io-roundtrip", lambda: check_io(catalog, seed)),
        ("classification", lambda: check_classification(catalog, attempts, existence_attempts, seed)),
    ]
    hook = _BoundHook()
    checks = []
    with rank_hook(hook):
        for name, fn in plan:
            if only is not None and name not in only:
                continue
            try:
                checks.append(fn())
            except Exception as exc:  # a crashing check is a failing check
                checks.append(_result(name, [f"{type(exc).__name__}: {exc}"]))
    checks.append(check_bound_hook(hook))
    failed = [c["name"] for c in checks if not c["ok"]]
    notes = []
    if attempts < FULL_ATTEMPTS:
        notes.append(
            f"non-existence sweeps used {attempts} samples per algebra instead of {FULL_ATTEMPTS}; "
            "a clean result carries correspondingly less falsification weight"
        )
    return {"checks": checks, "failed": failed, "notes": notes, "ok": not failed}
