"""Salamon tuple notation ``(0, 0, 12, 13, 14 + 23, 34 - 25)`` and the JSON structure-constant format.

Grammar (whitespace is insignificant)::

    tuple    := '(' entry (',' entry)* ')'
    entry    := '0' | ['-'|'+'] term (('+'|'-') term)*
    term     := [rational '*'] index index
    rational := int | int '/' int
    index    := digit 1..9, strictly increasing within a term

The unicode minus sign is accepted in place of ``-``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Tuple

from .exterior import JacobiError, LieAlgebra, check_jacobi

__all__ = [
    "SalamonSyntaxError",
    "parse_salamon",
    "format_salamon",
    "algebra_from_json",
    "algebra_to_json",
    "load_algebra",
]


class SalamonSyntaxError(ValueError):
    """Malformed Salamon text; ``position`` is a 0-based offset into the input."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
        self.reason = message


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.src = text.replace("−", "-")
        self.pos = 0

    def error(self, message, pos=None):
        raise SalamonSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def digits(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        return self.src[start : self.pos], start

    def parse(self):
        self.expect("(")
        entries = [self.entry()]
        while self.peek() == ",":
            self.pos += 1
            entries.append(self.entry())
        self.expect(")")
        if self.peek():
            self.error("trailing characters after ')'")
        return entries

    def entry(self) -> Dict[Tuple[int, int], Fraction]:
        if self.peek() == "0":
            # a lone zero, not the start of a coefficient like "0*12" or an index pair
            save = self.pos
            self.pos += 1
            if self.peek() in (",", ")"):
                return {}
            self.pos = save
        terms: Dict[Tuple[int, int], Fraction] = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            (k, l), c = self.term()
            terms[(k, l)] = terms.get((k, l), Fraction(0)) + sign * c
            ch = self.peek()
            if ch in ("+", "-") and ch:
                sign = -1 if ch == "-" else 1
                self.pos += 1
                continue
            if ch in (",", ")"):
                return {kl: c for kl, c in terms.items() if c != 0}
            self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")

    def term(self):
        text, start = self.digits()
        if not text:
            found = self.peek() or "end of input"
            self.error(f"expected a term, found {found!r}")
        coef = Fraction(1)
        if self.peek() in ("/", "*") and self.peek():
            if self.peek() == "/":
                self.pos += 1
                den, dstart = self.digits()
                if not den:
                    self.error("expected a denominator")
                if int(den) == 0:
                    self.error("zero denominator", dstart)
                coef = Fraction(int(text), int(den))
            else:
                coef = Fraction(int(text))
            self.expect("*")
            text, start = self.digits()
            if not text:
                self.error("expected an index pair after '*'")
        if len(text) != 2:
            self.error(f"index pair must be two digits, got {text!r}", start)
        k, l = int(text[0]), int(text[1])
        if k == 0 or l == 0:
            self.error("index 0 is not allowed", start)
        if k == l:
            self.error(f"repeated index in {text!r}", start)
        if k > l:
            self.error(f"indices not increasing in {text!r}", start)
        return (k, l), coef


def parse_salamon(text: str, name: str | None = None, check: bool = True) -> LieAlgebra:
    """Parse Salamon notation; validates index ranges and (by default) Jacobi."""
    p = _Parser(text)
    entries = p.parse()
    dim = len(entries)
    if dim > 9:
        raise SalamonSyntaxError("more than 9 entries", text, len(text))
    for a, eq in enumerate(entries, start=1):
        for k, l in eq:
            if l > dim:
                pos = _locate(p.src, a, f"{k}{l}")
                raise SalamonSyntaxError(f"index {l} out of range 1..{dim} in de^{a}", text, pos)
    g = LieAlgebra(dim, entries, name)
    if check:
        violation = check_jacobi(g)
        if violation is not None:
            raise JacobiError(violation)
    return g


def _locate(src: str, entry: int, token: str) -> int:
    # offset of ``token`` inside the entry-th comma separated field
    start = src.index("(") + 1
    for _ in range(entry - 1):
        start = src.index(",", start) + 1
    found = src.find(token, start)
    return found if found >= 0 else start


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_salamon(g: LieAlgebra) -> str:
    """Canonical text: lexicographic terms, unit coefficients suppressed, no spaces."""
    if g.dim > 9:
        raise ValueError("Salamon notation supports at most 9 dimensions")
    entries = []
    for eq in g.structure:
        if not eq:
            entries.append("0")
            continue
        parts = []
        for i, ((k, l), c) in enumerate(sorted(eq.items())):
            sign = "-" if c < 0 else ("+" if i else "")
            mag = abs(c)
            body = f"{k}{l}" if mag == 1 else f"{_fmt_coef(mag)}*{k}{l}"
            parts.append(sign + body)
        entries.append("".join(parts))
    return "(" + ",".join(entries) + ")"


# --- JSON structure-constant format -------------------------------------------------


def algebra_to_json(g: LieAlgebra) -> dict:
    """``{"dim": n, "d": {"3": [{"idx": [1, 2], "c": "1"}], ...}}``; zero equations omitted."""
    d = {}
    for a, eq in enumerate(g.structure, start=1):
        if eq:
            d[str(a)] = [{"idx": [k, l], "c": _fmt_coef(c)} for (k, l), c in sorted(eq.items())]
    out = {"dim": g.dim, "d": d}
    if g.name:
        out["name"] = g.name
    return out


def algebra_from_json(data, check: bool = True) -> LieAlgebra:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "dim" not in data:
        raise ValueError("structure-constant JSON needs a 'dim' field")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ValueError("'dim' must be a non-negative integer")
    structure: List[Dict[Tuple[int, int], Fraction]] = [dict() for _ in range(dim)]
    for key, terms in (data.get("d") or {}).items():
        try:
            a = int(key)
        except ValueError:
            raise ValueError(f"bad equation key {key!r}") from None
        if not 1 <= a <= dim:
            raise ValueError(f"equation index {a} out of range 1..{dim}")
        for t in terms:
            idx = t.get("idx")
            if not (isinstance(idx, list) and len(idx) == 2 and all(isinstance(i, int) for i in idx)):
                raise ValueError(f"bad idx in de^{a}: {idx!r}")
            k, l = idx
            try:
                c = Fraction(str(t.get("c", "1")))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad coefficient in de^{a}: {t.get('c')!r}") from None
            if k > l:
                k, l, c = l, k, -c
            structure[a - 1][(k, l)] = structure[a - 1].get((k, l), Fraction(0)) + c
    g = LieAlgebra(dim, structure, data.get("name"))
    if check:
        violation = check_jacobi(g)
        if violation is not None:
            raise JacobiError(violation)
    return g


def load_algebra(text: str, name: str | None = None) -> LieAlgebra:
    """Salamon text or structure-constant JSON, whichever ``text`` holds."""
    stripped = text.strip()
    if stripped.startswith("{"):
        g = algebra_from_json(stripped)
        return g.renamed(name) if name else g
    return parse_salamon(stripped, name)
