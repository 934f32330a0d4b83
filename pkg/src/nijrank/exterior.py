"""Exterior algebra on the complexified dual of a real Lie algebra.

Forms are sparse maps from strictly increasing index tuples (1-based) to
Gaussian rationals.  A Lie algebra is given by its structure equations
``de^a = sum_{k<l} c^a_{kl} e^{kl}`` with rational constants, and ``d`` is
extended to all forms as a graded derivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from . import linalg
from .gaussian import ZERO, GaussianRational, gq

Index = Tuple[int, ...]

__all__ = [
    "KForm",
    "LieAlgebra",
    "FrameMatrix",
    "JacobiViolation",
    "DimensionMismatch",
    "wedge",
    "differential",
    "conjugate",
    "check_jacobi",
    "change_frame",
    "bidegree_project",
    "from_complex_frame",
]


class DimensionMismatch(ValueError):
    pass


def _sort_sign(seq: Sequence[int]):
    """Sort ``seq`` returning (sorted tuple, permutation sign); None on a repeat."""
    items = list(seq)
    sign = 1
    # insertion sort; sequences here are at most a handful of entries long
    for i in range(1, len(items)):
        x = items[i]
        j = i - 1
        while j >= 0 and items[j] > x:
            items[j + 1] = items[j]
            j -= 1
            sign = -sign
        items[j + 1] = x
    for a, b in zip(items, items[1:]):
        if a == b:
            return None
    return tuple(items), sign


class KForm:
    """A homogeneous complex k-form over an algebra of dimension ``dim``."""

    __slots__ = ("dim", "degree", "_terms", "_hash")

    def __init__(self, dim: int, degree: int, terms: Optional[Mapping] = None):
        if dim < 0 or degree < 0:
            raise ValueError("dimension and degree must be non-negative")
        clean: Dict[Index, GaussianRational] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if any(not 1 <= i <= dim for i in idx):
                raise ValueError(f"index {idx} out of range 1..{dim}")
            s = _sort_sign(idx)
            if s is None:
                continue
            key, sign = s
            c = gq(c)
            if sign < 0:
                c = -c
            total = clean.get(key, ZERO) + c
            if total.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = total
        self.dim = dim
        self.degree = degree
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, dim, degree, terms):
        obj = object.__new__(cls)
        obj.dim = dim
        obj.degree = degree
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, dim: int, *indices: int, coeff=1) -> "KForm":
        """``coeff * e^{i1} ^ ... ^ e^{ik}``; indices may come in any order."""
        return cls(dim, len(indices), {tuple(indices): coeff})

    @classmethod
    def scalar(cls, dim: int, value=1) -> "KForm":
        return cls(dim, 0, {(): value})

    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        return cls._trusted(dim, degree, {})

    @classmethod
    def one_form(cls, coeffs: Sequence) -> "KForm":
        """The 1-form ``sum_b coeffs[b-1] e^b``."""
        return cls(len(coeffs), 1, {(b + 1,): c for b, c in enumerate(coeffs) if not gq(c).is_zero()})

    @property
    def terms(self) -> Mapping[Index, GaussianRational]:
        return MappingProxyType(self._terms)

    def coefficient(self, *indices: int) -> GaussianRational:
        s = _sort_sign(indices)
        if s is None:
            return ZERO
        key, sign = s
        c = self._terms.get(key, ZERO)
        return -c if sign < 0 else c

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "KForm"):
        if not isinstance(other, KForm):
            raise TypeError(f"expected KForm, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"forms over dimensions {self.dim} and {other.dim}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add forms of different degree")
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            t = out.get(k, ZERO) + c
            if t.is_zero():
                out.pop(k, None)
            else:
                out[k] = t
        return KForm._trusted(self.dim, self.degree, out)

    def __neg__(self) -> "KForm":
        return KForm._trusted(self.dim, self.degree, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def scale(self, c) -> "KForm":
        c = gq(c)
        if c.is_zero():
            return KForm.zero(self.dim, self.degree)
        return KForm._trusted(self.dim, self.degree, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, KForm):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        if self.dim != other.dim or self._terms != other._terms:
            return False
        return self.degree == other.degree or not self._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"KForm(dim={self.dim}, degree={self.degree}, 0)"
        parts = [f"({c})e^{''.join(map(str, k)) or '()'}" for k, c in sorted(self._terms.items())]
        return f"KForm(dim={self.dim}, " + " + ".join(parts) + ")"


def wedge(a: KForm, b: KForm) -> KForm:
    a._check(b)
    out: Dict[Index, GaussianRational] = {}
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            sa = set(ka)
            if any(i in sa for i in kb):
                continue
            # sign of the shuffle = parity of pairs (x in ka, y in kb) with x > y
            inv = 0
            for x in ka:
                for y in kb:
                    if x > y:
                        inv += 1
            key = tuple(sorted(ka + kb))
            c = ca * cb
            if inv & 1:
                c = -c
            t = out.get(key, ZERO) + c
            if t.is_zero():
                out.pop(key, None)
            else:
                out[key] = t
    return KForm._trusted(a.dim, a.degree + b.degree, out)


def conjugate(a: KForm) -> KForm:
    return KForm._trusted(a.dim, a.degree, {k: c.conjugate() for k, c in a._terms.items()})


@dataclass(frozen=True)
class JacobiViolation:
    index: int
    form: KForm

    def __str__(self):
        return f"d(de^{self.index}) = {self.form!r} is not zero"


class JacobiError(ValueError):
    def __init__(self, violation: JacobiViolation):
        super().__init__(f"Jacobi identity fails: {violation}")
        self.violation = violation


class LieAlgebra:
    """Real Lie algebra given by rational structure constants.

    ``structure[a-1]`` maps ``(k, l)`` with ``k < l`` to ``c^a_{kl}``, so that
    ``de^a = sum c^a_{kl} e^{kl}``.  Jacobi is *not* enforced here; use
    :func:`check_jacobi` (parsers do).
    """

    __slots__ = ("dim", "structure", "name", "_de")

    def __init__(self, dim: int, structure: Sequence[Mapping[Tuple[int, int], object]], name: str | None = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        if len(structure) != dim:
            raise ValueError(f"expected {dim} structure equations, got {len(structure)}")
        clean = []
        for a, eq in enumerate(structure, start=1):
            row: Dict[Tuple[int, int], Fraction] = {}
            for (k, l), c in eq.items():
                if not (1 <= k <= dim and 1 <= l <= dim):
                    raise ValueError(f"de^{a}: index ({k},{l}) out of range 1..{dim}")
                if k == l:
                    raise ValueError(f"de^{a}: repeated index ({k},{l})")
                c = Fraction(c)
                if k > l:
                    k, l, c = l, k, -c
                row[(k, l)] = row.get((k, l), Fraction(0)) + c
            clean.append({kl: c for kl, c in sorted(row.items()) if c != 0})
        self.dim = dim
        self.structure = tuple(MappingProxyType(r) for r in clean)
        self.name = name
        self._de = tuple(KForm(dim, 2, r) for r in clean)

    def __reduce__(self):
        return (LieAlgebra, (self.dim, [dict(s) for s in self.structure], self.name))

    def de(self, a: int) -> KForm:
        """The 2-form ``de^a`` (1-based)."""
        return self._de[a - 1]

    def bracket_constants(self):
        """``[e_k, e_l] = sum_a b^a_{kl} e_a`` with ``b = -c`` for ``k < l``."""
        out = {}
        for a, eq in enumerate(self.structure, start=1):
            for (k, l), c in eq.items():
                out.setdefault((k, l), {})[a] = -c
        return out

    def renamed(self, name: str | None) -> "LieAlgebra":
        return LieAlgebra(self.dim, [dict(s) for s in self.structure], name)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and [dict(s) for s in self.structure] == [dict(s) for s in other.structure]

    def __hash__(self):
        return hash((self.dim, tuple(frozenset(s.items()) for s in self.structure)))

    def __repr__(self):
        from .salamon import format_salamon

        label = f"{self.name!r}, " if self.name else ""
        try:
            body = format_salamon(self)
        except ValueError:
            body = f"dim={self.dim}"
        return f"LieAlgebra({label}{body})"


def _check_alg(g: LieAlgebra, a: KForm):
    if a.dim != g.dim:
        raise DimensionMismatch(f"form over dimension {a.dim}, algebra of dimension {g.dim}")


def differential(g: LieAlgebra, a: KForm) -> KForm:
    """Chevalley-Eilenberg differential of ``a``."""
    _check_alg(g, a)
    out: Dict[Index, GaussianRational] = {}
    for idx, coef in a._terms.items():
        for r, i in enumerate(idx):
            eq = g.structure[i - 1]
            if not eq:
                continue
            head, tail = idx[:r], idx[r + 1 :]
            base_sign = -1 if r & 1 else 1
            for (p, q), c in eq.items():
                s = _sort_sign(head + (p, q) + tail)
                if s is None:
                    continue
                key, sign = s
                val = coef * GaussianRational(c)
                if sign * base_sign < 0:
                    val = -val
                t = out.get(key, ZERO) + val
                if t.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = t
    return KForm._trusted(a.dim, a.degree + 1, out)


def check_jacobi(g: LieAlgebra) -> Optional[JacobiViolation]:
    """None when ``d(de^a) = 0`` for every ``a``, else the first violation."""
    for a in range(1, g.dim + 1):
        dd = differential(g, g.de(a))
        if not dd.is_zero():
            return JacobiViolation(a, dd)
    return None


class FrameMatrix:
    """Invertible ``n x n`` matrix whose rows are a co-frame ``theta^a = M^a_b e^b``."""

    __slots__ = ("entries", "_inverse")

    def __init__(self, entries):
        rows = tuple(tuple(gq(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("frame matrix must be square")
        try:
            inv = linalg.inverse([list(r) for r in rows])
        except linalg.SingularMatrixError:
            raise linalg.SingularMatrixError("frame matrix is singular") from None
        self.entries = rows
        self._inverse = tuple(tuple(r) for r in inv)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def inverse_entries(self):
        return self._inverse

    def inverse(self) -> "FrameMatrix":
        return FrameMatrix(self._inverse)

    def __eq__(self, other):
        return isinstance(other, FrameMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)


def _substitute(a: KForm, sub, columns: Optional[Iterable[int]] = None) -> KForm:
    """Replace each ``x^b`` by ``sum_c sub[b-1][c-1] y^c`` and expand.

    With ``columns`` given, only the ``y^c`` with ``c`` in that set are kept,
    which yields exactly the components of the result supported on them.
    """
    n = len(sub)
    if a.dim != n:
        raise DimensionMismatch(f"form over dimension {a.dim}, frame of size {n}")
    keep = None if columns is None else set(columns)
    images = []
    for row in sub:
        images.append(
            KForm._trusted(
                n,
                1,
                {(c + 1,): x for c, x in enumerate(row) if not x.is_zero() and (keep is None or c + 1 in keep)},
            )
        )
    total = KForm.zero(n, a.degree)
    for idx, coef in a._terms.items():
        piece = KForm._trusted(n, 0, {(): coef})
        for i in idx:
            piece = wedge(piece, images[i - 1])
            if piece.is_zero():
                break
        total = total + piece
    return KForm._trusted(n, a.degree, dict(total._terms))


def change_frame(a: KForm, M: FrameMatrix, columns=None) -> KForm:
    """Rewrite ``a`` in the co-frame ``theta = M e``; index ``c`` then means ``theta^c``."""
    if not isinstance(M, FrameMatrix):
        M = FrameMatrix(M)
    # e^b = sum_c (M^-1)_{bc} theta^c
    return _substitute(a, M.inverse_entries, columns)


def from_frame(a: KForm, M: FrameMatrix) -> KForm:
    """Inverse of :func:`change_frame`: a form in ``theta`` indices back to the e-basis."""
    if not isinstance(M, FrameMatrix):
        M = FrameMatrix(M)
    return _substitute(a, M.entries)


def bidegree_project(a: KForm, J, p: int, q: int) -> KForm:
    """The (p, q)-component of ``a`` for the structure with co-frame ``J``.

    ``J`` is a :class:`~nijrank.acs.CoFrame`; the result is in the e-basis.
    """
    if p < 0 or q < 0 or p + q != a.degree:
        raise ValueError(f"bidegree ({p},{q}) does not match degree {a.degree}")
    M = J.frame_matrix()
    if M.n != a.dim:
        raise DimensionMismatch(f"form over dimension {a.dim}, structure on dimension {M.n}")
    m = J.m
    theta = change_frame(a, M)
    kept = {k: c for k, c in theta._terms.items() if sum(1 for i in k if i <= m) == p}
    return from_frame(KForm._trusted(a.dim, a.degree, kept), M)


def from_complex_frame(m: int, dphi: Sequence[KForm], name: str | None = None):
    """Real algebra and co-frame from complex structure equations.

    ``dphi[j-1]`` is ``dphi^j`` written with index ``k`` for ``phi^k`` and
    ``m + k`` for ``conj(phi^k)``, where ``phi^j = e^{2j-1} + i e^{2j}``.
    """
    from .acs import standard_acs

    if len(dphi) != m:
        raise ValueError(f"expected {m} differentials, got {len(dphi)}")
    std = standard_acs(m)
    M = std.frame_matrix()
    n = 2 * m
    structure = []
    for j, form in enumerate(dphi, start=1):
        if form.dim != n or (form.degree != 2 and not form.is_zero()):
            raise ValueError(f"dphi^{j} must be a 2-form over dimension {n}")
        real = from_frame(form, M)
        re_part = {k: c.re for k, c in real.terms.items() if c.re != 0}
        im_part = {k: c.im for k, c in real.terms.items() if c.im != 0}
        structure.append(re_part)
        structure.append(im_part)
    g = LieAlgebra(n, structure, name)
    violation = check_jacobi(g)
    if violation is not None:
        raise JacobiError(violation)
    # the conjugate equations are implied; check the round trip is exact
    for j, form in enumerate(dphi, start=1):
        phi = KForm.one_form(std.rows[j - 1])
        if change_frame(differential(g, phi), M) != form:
            raise ValueError(f"dphi^{j} is not induced by a real algebra")
    return g, std
