"""Almost complex structures on a Lie algebra and the rank of their Nijenhuis tensor.

A structure is carried by a :class:`CoFrame`: ``m`` complex 1-forms (rows of
an ``m x 2m`` matrix in the e-basis) declared to be of type (1,0).  The rank
of the structure is the rank of ``mu_bar = pi^{0,2} o d`` on (1,0)-forms.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .exterior import DimensionMismatch, FrameMatrix, KForm, LieAlgebra, change_frame, differential
from .gaussian import I, ONE, ZERO, GaussianRational, gq

__all__ = [
    "CoFrame",
    "MuBarMatrix",
    "RealJ",
    "SingularDeformation",
    "standard_acs",
    "coordinate_acs",
    "deform",
    "deformation_det",
    "mu_bar",
    "mu_bar_generic",
    "rank",
    "nijenhuis_rank",
    "real_j",
    "acs_from_real_j",
    "nijenhuis_oracle",
    "random_acs",
    "relative_deformation",
    "rank_hook",
]


class SingularDeformation(ValueError):
    """The deformed forms are not independent (``det(P) == 0``)."""

    def __init__(self, phi, message="singular deformation: det(P) = 0"):
        super().__init__(f"{message} for Phi = {[[str(x) for x in row] for row in phi]}")
        self.phi = phi


class CoFrame:
    """Co-frame of (1,0)-forms; ``rows[j]`` is ``omega^{j+1}`` in the e-basis."""

    __slots__ = ("m", "rows", "_frame")

    def __init__(self, rows):
        rows = tuple(tuple(gq(x) for x in row) for row in rows)
        m = len(rows)
        if m == 0:
            raise ValueError("a co-frame needs at least one form")
        if any(len(r) != 2 * m for r in rows):
            raise ValueError(f"co-frame rows must have {2 * m} entries")
        self.m = m
        self.rows = rows
        try:
            self._frame = FrameMatrix(rows + tuple(tuple(x.conjugate() for x in r) for r in rows))
        except linalg.SingularMatrixError:
            raise SingularDeformation(
                [list(r) for r in rows], "forms and conjugates are not a basis"
            ) from None

    @property
    def dim(self) -> int:
        return 2 * self.m

    def frame_matrix(self) -> FrameMatrix:
        return self._frame

    def form(self, j: int) -> KForm:
        """``omega^j`` (1-based) as a KForm."""
        return KForm.one_form(self.rows[j - 1])

    def same_structure(self, other: "CoFrame") -> bool:
        """True when both co-frames span the same (1,0)-space."""
        if other.m != self.m:
            return False
        return linalg.rank([list(r) for r in self.rows + other.rows]) == self.m

    def __eq__(self, other):
        return isinstance(other, CoFrame) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"CoFrame({[[str(x) for x in r] for r in self.rows]})"


@dataclass(frozen=True)
class MuBarMatrix:
    """Coefficient of ``omega^{bar k bar l}`` in ``mu_bar omega^j``; columns lexicographic in (k, l)."""

    m: int
    entries: Tuple[Tuple[GaussianRational, ...], ...]

    @property
    def columns(self) -> List[Tuple[int, int]]:
        return [(k, l) for k in range(1, self.m + 1) for l in range(k + 1, self.m + 1)]

    def entry(self, j: int, k: int, l: int) -> GaussianRational:
        return self.entries[j - 1][self.columns.index((k, l))]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def rank(self) -> int:
        return rank(self)


@dataclass(frozen=True)
class RealJ:
    """Real endomorphism of the Lie algebra: column ``b`` is ``J e_b``."""

    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if n % 2 or any(len(r) != n for r in self.matrix):
            raise ValueError("J must be a square matrix of even size")

    @property
    def n(self) -> int:
        return len(self.matrix)

    def squared(self):
        a = self.matrix
        n = self.n
        return tuple(tuple(sum(a[i][k] * a[k][j] for k in range(n)) for j in range(n)) for i in range(n))

    def is_complex_structure(self) -> bool:
        sq = self.squared()
        n = self.n
        return all(sq[i][j] == (-1 if i == j else 0) for i in range(n) for j in range(n))


# --- construction -------------------------------------------------------------


@lru_cache(maxsize=None)
def standard_acs(m: int) -> CoFrame:
    """``phi^j = e^{2j-1} + i e^{2j}``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rows = []
    for j in range(m):
        row = [ZERO] * (2 * m)
        row[2 * j] = ONE
        row[2 * j + 1] = I
        rows.append(row)
    return CoFrame(rows)


def coordinate_acs(pairs: Sequence[Tuple[int, int]], signs: Optional[Sequence[int]] = None) -> CoFrame:
    """``phi^j = +-e^{a_j} + i e^{b_j}`` for the given index pairs (1-based)."""
    m = len(pairs)
    signs = signs or [1] * m
    rows = []
    for (a, b), s in zip(pairs, signs):
        row = [ZERO] * (2 * m)
        row[a - 1] = gq(s)
        row[b - 1] = I
        rows.append(row)
    return CoFrame(rows)


def _as_phi(params, m: int):
    phi = [[gq(x) for x in row] for row in params]
    if len(phi) != m or any(len(r) != m for r in phi):
        raise ValueError(f"Phi must be {m}x{m}")
    return phi


def deformation_det(phi) -> GaussianRational:
    """``D = det [[Id, Phi], [conj(Phi), Id]]``."""
    m = len(phi)
    phi = _as_phi(phi, m)
    top = [[ONE if i == j else ZERO for j in range(m)] + list(phi[i]) for i in range(m)]
    bottom = [[x.conjugate() for x in phi[i]] + [ONE if i == j else ZERO for j in range(m)] for i in range(m)]
    return linalg.det(top + bottom)


def deform(base: CoFrame, params) -> CoFrame:
    """``omega^j = phi^j + f^j_k conj(phi^k)``; raises SingularDeformation when D = 0."""
    m = base.m
    phi = _as_phi(params, m)
    if deformation_det(phi).is_zero():
        raise SingularDeformation(phi)
    rows = []
    for j in range(m):
        row = list(base.rows[j])
        for k in range(m):
            f = phi[j][k]
            if f.is_zero():
                continue
            for b, x in enumerate(base.rows[k]):
                if not x.is_zero():
                    row[b] = row[b] + f * x.conjugate()
        rows.append(row)
    return CoFrame(rows)


def relative_deformation(base: CoFrame, target: CoFrame):
    """Phi with ``deform(base, Phi)`` spanning the same (1,0)-space as ``target``.

    Returns None when the target is not a graph over ``base`` (its projection
    onto the base (1,0)-space is singular).
    """
    m = base.m
    ninv = base.frame_matrix().inverse_entries
    # target rows in the basis (phi, conj phi): W_t = A W + B conj(W)
    coeffs = linalg.matmul([list(r) for r in target.rows], [list(r) for r in ninv])
    a = [row[:m] for row in coeffs]
    b = [row[m:] for row in coeffs]
    try:
        a_inv = linalg.inverse(a)
    except linalg.SingularMatrixError:
        return None
    return linalg.matmul(a_inv, b)


# --- mu_bar and rank ----------------------------------------------------------


def _check_dims(g: LieAlgebra, J: CoFrame):
    if g.dim != J.dim:
        raise DimensionMismatch(f"structure on dimension {J.dim}, algebra of dimension {g.dim}")


def mu_bar(g: LieAlgebra, J: CoFrame) -> MuBarMatrix:
    """Matrix of ``mu_bar`` on the (1,0)-forms of ``J``.

    ``d omega^j`` is a 2-form, so its ``conj(omega)^{kl}`` coefficient is a sum
    of 2x2 minors of the inverse frame; this avoids a general change of frame.
    """
    _check_dims(g, J)
    m = J.m
    ninv = J.frame_matrix().inverse_entries
    cols = [(k, l) for k in range(1, m + 1) for l in range(k + 1, m + 1)]
    entries = []
    for j in range(1, m + 1):
        d_omega = _d_one_form(g, J.rows[j - 1])
        row = []
        for k, l in cols:
            s = ZERO
            for (p, q), c in d_omega.items():
                a, b = ninv[p - 1], ninv[q - 1]
                s = s + c * (a[m + k - 1] * b[m + l - 1] - a[m + l - 1] * b[m + k - 1])
            row.append(s)
        entries.append(tuple(row))
    return MuBarMatrix(m, tuple(entries))


def _d_one_form(g: LieAlgebra, coeffs):
    # d(sum_b w_b e^b) = sum_b w_b de^b as {(p, q): coefficient}
    out = {}
    for b, w in enumerate(coeffs):
        if w.is_zero():
            continue
        for pq, c in g.structure[b].items():
            t = out.get(pq, ZERO) + w * GaussianRational(c)
            if t.is_zero():
                out.pop(pq, None)
            else:
                out[pq] = t
    return out


def mu_bar_generic(g: LieAlgebra, J: CoFrame) -> MuBarMatrix:
    """Same matrix through the full change of frame; kept as a cross-check."""
    _check_dims(g, J)
    m = J.m
    frame = J.frame_matrix()
    bar_cols = range(m + 1, 2 * m + 1)
    cols = [(k, l) for k in range(1, m + 1) for l in range(k + 1, m + 1)]
    entries = []
    for j in range(1, m + 1):
        d_omega = differential(g, J.form(j))
        # keep only the conj(omega) components of the rewritten form: its (0,2) part
        in_frame = change_frame(d_omega, frame, columns=bar_cols)
        entries.append(tuple(in_frame.coefficient(m + k, m + l) for k, l in cols))
    return MuBarMatrix(m, tuple(entries))


def rank(M: MuBarMatrix) -> int:
    if not M.entries or not M.entries[0]:
        return 0
    return linalg.rank([list(r) for r in M.entries])


_HOOKS: List[Callable] = []


@contextmanager
def rank_hook(fn: Callable[[LieAlgebra, CoFrame, int], None]):
    """Call ``fn(g, J, rank)`` on every :func:`nijenhuis_rank` evaluation inside the block."""
    _HOOKS.append(fn)
    try:
        yield fn
    finally:
        _HOOKS.remove(fn)


def nijenhuis_rank(g: LieAlgebra, J: CoFrame) -> int:
    """Rank of ``mu_bar``; the entry point used by every search and report."""
    r = rank(mu_bar(g, J))
    for fn in list(_HOOKS):
        fn(g, J, r)
    return r


# --- real endomorphism J --------------------------------------------------------


def real_j(J: CoFrame) -> RealJ:
    """Real J (acting on vectors) whose dual +i-eigenspace is spanned by the rows of ``J``."""
    M = J.frame_matrix()
    m, n = J.m, J.dim
    ninv = M.inverse_entries
    # J = M^-1 diag(i, ..., -i, ...) M
    scaled = [[(I if a < m else -I) * x for x in M.entries[a]] for a in range(n)]
    prod = linalg.matmul([list(r) for r in ninv], scaled)
    out = []
    for row in prod:
        if any(not x.is_real() for x in row):
            raise ArithmeticError("induced J is not real")
        out.append(tuple(x.re for x in row))
    return RealJ(tuple(out))


def _as_realj(J) -> RealJ:
    if isinstance(J, RealJ):
        return J
    return RealJ(tuple(tuple(Fraction(x) for x in row) for row in J))


def acs_from_real_j(J) -> CoFrame:
    """Co-frame for a real J with ``J^2 = -Id``.

    Candidates ``e^j - i (e^j o J)`` are taken top to bottom and kept when
    independent of those already chosen.
    """
    J = _as_realj(J)
    if not J.is_complex_structure():
        raise ValueError("J^2 != -Id")
    n = J.n
    cands = []
    for j in range(n):
        row = [GaussianRational(0, -J.matrix[j][p]) for p in range(n)]
        row[j] = row[j] + ONE
        cands.append(row)
    chosen = linalg.independent_rows(cands)
    if len(chosen) != n // 2:
        raise ArithmeticError("(1,0)-space has the wrong dimension")
    return CoFrame([cands[j] for j in chosen])


def _bracket(structure_brackets, n, u, v):
    out = [ZERO] * n
    for (k, l), images in structure_brackets.items():
        coef = u[k - 1] * v[l - 1] - u[l - 1] * v[k - 1]
        if coef.is_zero():
            continue
        for a, b in images.items():
            out[a - 1] = out[a - 1] + coef * GaussianRational(b)
    return out


def _apply(Jm, v):
    n = len(Jm)
    return [sum((GaussianRational(Jm[i][k]) * v[k] for k in range(n) if Jm[i][k] != 0), ZERO) for i in range(n)]


def nijenhuis_oracle(g: LieAlgebra, J) -> int:
    """Rank of ``(k,l) -> omega^j(N(psi_k, psi_l))`` on (0,1)-vectors, from brackets.

    ``N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]``.  Uses neither the
    frame inversion nor the bidegree projection of :func:`mu_bar`.
    """
    J = _as_realj(J)
    if g.dim != J.n:
        raise DimensionMismatch(f"J on dimension {J.n}, algebra of dimension {g.dim}")
    if not J.is_complex_structure():
        raise ValueError("J^2 != -Id")
    n = J.n
    br = g.bracket_constants()
    # pi^{0,1}(e_b) is proportional to e_b + i J e_b (column b of Id + iJ)
    cands = []
    for b in range(n):
        v = [GaussianRational(0, J.matrix[a][b]) for a in range(n)]
        v[b] = v[b] + ONE
        cands.append(v)
    psi = [cands[b] for b in linalg.independent_rows(cands)]
    omega = acs_from_real_j(J).rows
    Jm = J.matrix

    def N(x, y):
        jx, jy = _apply(Jm, x), _apply(Jm, y)
        t1 = _bracket(br, n, jx, jy)
        t2 = _apply(Jm, _bracket(br, n, jx, y))
        t3 = _apply(Jm, _bracket(br, n, x, jy))
        t4 = _bracket(br, n, x, y)
        return [a - b - c - d for a, b, c, d in zip(t1, t2, t3, t4)]

    m = len(psi)
    columns = []
    for k in range(m):
        for l in range(k + 1, m):
            columns.append(N(psi[k], psi[l]))
    if not columns:
        return 0
    T = [[sum((w * x for w, x in zip(row, col)), ZERO) for col in columns] for row in omega]
    return linalg.rank(T)


# --- sampling -------------------------------------------------------------------


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _random_rational(rng, magnitude: int) -> Fraction:
    return Fraction(int(rng.integers(-magnitude, magnitude + 1)), int(rng.integers(1, magnitude + 1)))


def random_phi(m: int, rng, magnitude: int = 5):
    return [
        [GaussianRational(_random_rational(rng, magnitude), _random_rational(rng, magnitude)) for _ in range(m)]
        for _ in range(m)
    ]


def _primitive_row(row):
    # clear denominators and common factors; the spanned line is unchanged
    lcm = 1
    for x in row:
        d = x.parts[2]
        lcm = lcm * d // gcd(lcm, d)
    ints = [(a * (lcm // d), b * (lcm // d)) for a, b, d in (x.parts for x in row)]
    g = 0
    for a, b in ints:
        g = gcd(g, gcd(a, b))
    g = g or 1
    return [GaussianRational.from_ints(a // g, b // g) for a, b in ints]


def conjugated_acs(Q) -> CoFrame:
    """Structure ``J = Q J_std Q^-1``; its (1,0)-forms are the rows of ``W_std Q^-1``."""
    n = len(Q)
    m = n // 2
    qinv = linalg.inverse([[gq(x) for x in row] for row in Q])
    rows = []
    for j in range(m):
        rows.append(_primitive_row([qinv[2 * j][b] + I * qinv[2 * j + 1][b] for b in range(n)]))
    return CoFrame(rows)


def random_acs(m: int, seed=None, mode: str = "deform", magnitude: int = 5, max_tries: int = 1000) -> CoFrame:
    """Random structure on a 2m-dimensional algebra.

    ``deform``: Phi with entries whose real and imaginary parts have
    numerators in [-magnitude, magnitude] and denominators in [1, magnitude],
    applied to the standard structure; resampled while D = 0.
    ``conjugate``: ``J = Q J_std Q^-1`` for an integer matrix Q with entries in
    [-magnitude, magnitude], resampled until invertible.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = _rng(seed)
    if mode == "deform":
        base = standard_acs(m)
        for _ in range(max_tries):
            phi = random_phi(m, rng, magnitude)
            if not deformation_det(phi).is_zero():
                return deform(base, phi)
    elif mode == "conjugate":
        n = 2 * m
        for _ in range(max_tries):
            Q = [[int(x) for x in row] for row in rng.integers(-magnitude, magnitude + 1, size=(n, n))]
            if not linalg.det(linalg.as_matrix(Q)).is_zero():
                return conjugated_acs(Q)
    else:
        raise ValueError(f"unknown sampling mode {mode!r}")
    raise RuntimeError(f"no valid structure after {max_tries} tries")
