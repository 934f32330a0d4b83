"""Command line front end: ``nijrank parse|rank|classify|curve|verify-paper``.

Every command prints one JSON report (sorted keys, exact rational strings)
and exits with 0 on success, 1 when a verification fails, 2 on bad input and
3 when the requested structure is singular.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .acs import CoFrame, SingularDeformation, deform, mu_bar, nijenhuis_oracle, rank, real_j, standard_acs
from .catalog import CatalogError, coframe_to_json, load_catalog
from .exterior import JacobiError, LieAlgebra
from .gaussian import format_gaussian, gq
from .salamon import SalamonSyntaxError, format_salamon, load_algebra
from .survey import (
    Curve,
    achievable_ranks,
    betti1,
    curve_profile,
    rank_bound,
    rank_cap,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_SINGULAR = 3


class InputError(Exception):
    pass


def _report(command: str, inputs: dict, results, seed=None) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs, "results": results}
    if seed is not None:
        out["seed"] = seed
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


# --- input handling -----------------------------------------------------------------


def _algebra(args) -> LieAlgebra:
    given = [x for x in (args.algebra, args.file, args.catalog) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --algebra, --file, --catalog")
    try:
        if args.algebra is not None:
            return load_algebra(args.algebra)
        if args.file is not None:
            if args.file == "-":
                text = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            return load_algebra(text)
        return _catalog(args).get(args.catalog).algebra
    except (SalamonSyntaxError, JacobiError, CatalogError) as exc:
        raise InputError(str(exc)) from None
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _catalog(args):
    try:
        return load_catalog(getattr(args, "catalog_file", None), getattr(args, "algebras_file", None))
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot load catalog: {exc}") from None


def _algebra_inputs(args) -> dict:
    return {k: getattr(args, k) for k in ("algebra", "file", "catalog") if getattr(args, k, None) is not None}


def _matrix(text: str, what: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError(f"{what} must be a JSON list of rows")
    rows = []
    for row in data:
        out = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise InputError(f"{what} entries must be integers or exact strings such as \"1/2+i\", got {x!r}")
            try:
                out.append(gq(str(x)))
            except ValueError as exc:
                raise InputError(f"{what}: {exc}") from None
        rows.append(out)
    return rows


def _structure(args, g: LieAlgebra) -> CoFrame:
    m = g.dim // 2
    chosen = [x for x in (args.phi, args.coframe, args.structure) if x is not None]
    if len(chosen) > 1:
        raise InputError("give at most one of --phi, --coframe, --structure")
    if g.dim % 2 or g.dim == 0:
        raise InputError(f"dimension {g.dim} carries no almost complex structure")
    if args.structure is not None:
        if args.catalog is None:
            raise InputError("--structure needs --catalog")
        try:
            return _catalog(args).get(args.catalog).structure(args.structure).coframe
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if args.coframe is not None:
        rows = _matrix(args.coframe, "--coframe")
        if len(rows) != m or any(len(r) != 2 * m for r in rows):
            raise InputError(f"--coframe must be {m}x{2 * m}")
        return CoFrame(rows)
    phi = _matrix(args.phi, "--phi") if args.phi is not None else [[gq(0)] * m for _ in range(m)]
    if len(phi) != m or any(len(r) != m for r in phi):
        raise InputError(f"--phi must be {m}x{m}")
    return deform(standard_acs(m), phi)


def _samples(text: str):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            raise InputError("empty sample in --samples")
        try:
            out.append(gq(tok))
        except ValueError as exc:
            raise InputError(f"--samples: {exc}") from None
    return out


def _mat_json(rows) -> List[List[str]]:
    return [[format_gaussian(x) for x in r] for r in rows]


# --- commands ---------------------------------------------------------------------


def cmd_parse(args) -> tuple:
    g = _algebra(args)
    results = {"canonical": format_salamon(g) if g.dim <= 9 else None, "dim": g.dim, "betti1": betti1(g), "jacobi": "ok"}
    if g.dim % 2 == 0:
        results["rank_bound"] = rank_bound(g)
        results["rank_cap"] = rank_cap(g)
    else:
        results["rank_bound"] = None
        results["rank_cap"] = None
    return _report("parse", _algebra_inputs(args), results), EXIT_OK


def cmd_rank(args) -> tuple:
    g = _algebra(args)
    inputs = _algebra_inputs(args)
    for k in ("phi", "coframe", "structure"):
        if getattr(args, k) is not None:
            inputs[k] = getattr(args, k)
    J = _structure(args, g)
    M = mu_bar(g, J)
    results = {
        "coframe": coframe_to_json(J),
        "columns": [f"{k}{l}" for k, l in M.columns],
        "mu_bar": _mat_json(M.entries),
        "rank": rank(M),
    }
    if args.oracle:
        results["oracle_rank"] = nijenhuis_oracle(g, real_j(J))
        inputs["oracle"] = True
    return _report("rank", inputs, results), EXIT_OK


def _witness_json(w) -> dict:
    out = {"coframe": coframe_to_json(w.coframe), "strategy": w.strategy, "index": w.index, "magnitude": w.magnitude}
    phi = w.phi()
    if phi is not None:
        out["phi"] = _mat_json(phi)
    return out


def cmd_classify(args) -> tuple:
    g = _algebra(args)
    if g.dim % 2 or g.dim == 0:
        raise InputError(f"dimension {g.dim} carries no almost complex structure")
    rep = achievable_ranks(g, args.attempts, args.seed)
    results = {
        "algebra": rep.canonical,
        "betti1": rep.betti1,
        "bound": rep.bound,
        "cap": rep.cap,
        "achieved": rep.ranks,
        "witnesses": {str(r): _witness_json(w) for r, w in sorted(rep.achieved.items())},
        "sample_counts": {str(r): n for r, n in sorted(rep.counts.items())},
        "not_found": rep.not_found,
        "proved_absent": [r for r in range(g.dim // 2 + 1) if r > rep.cap],
    }
    inputs = dict(_algebra_inputs(args), attempts=args.attempts)
    return _report("classify", inputs, results, seed=args.seed), EXIT_OK


def cmd_curve(args) -> tuple:
    g = _algebra(args)
    if g.dim % 2 or g.dim == 0:
        raise InputError(f"dimension {g.dim} carries no almost complex structure")
    m = g.dim // 2
    samples = _samples(args.samples)
    phi = _matrix(args.phi, "--phi") if args.phi is not None else [[gq(0)] * m for _ in range(m)]
    if len(phi) != m or any(len(r) != m for r in phi):
        raise InputError(f"--phi must be {m}x{m}")
    base = standard_acs(m)
    if args.base is not None:
        rows = _matrix(args.base, "--base")
        if len(rows) != m or any(len(r) != 2 * m for r in rows):
            raise InputError(f"--base must be {m}x{2 * m}")
        base = CoFrame(rows)
    prof = curve_profile(g, Curve(base, tuple(tuple(r) for r in phi)), samples)
    results = {
        "points": [{"s": format_gaussian(s), "rank": r} for s, r in prof.points],
        "rank_at_0": prof.rank0,
        "rank_at_1": prof.rank1,
        "floor": prof.floor,
        "violations": [format_gaussian(s) for s in prof.violations],
        "exceptional": [format_gaussian(s) for s in prof.exceptional],
        "generic_rank": prof.generic,
        "verdict": prof.verdict,
    }
    inputs = dict(_algebra_inputs(args), samples=args.samples)
    if args.phi is not None:
        inputs["phi"] = args.phi
    return _report("curve", inputs, results), EXIT_OK


def cmd_verify_paper(args) -> tuple:
    from .checks import run_all

    catalog = _catalog(args)
    results = run_all(catalog, attempts=args.attempts, existence_attempts=args.existence_attempts, seed=args.seed)
    inputs = {"attempts": args.attempts, "existence_attempts": args.existence_attempts}
    if args.catalog_file:
        inputs["catalog_file"] = args.catalog_file
    code = EXIT_OK if results["ok"] else EXIT_FAIL
    return _report("verify-paper", inputs, results, seed=args.seed), code


# --- argument parsing ---------------------------------------------------------------


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def _add_algebra(p):
    p.add_argument("--algebra", help="Salamon tuple or structure-constant JSON")
    p.add_argument("--file", help="file with the algebra ('-' reads stdin)")
    p.add_argument("--catalog", metavar="NAME", help="bundled catalog entry")
    p.add_argument("--catalog-file", help="alternative catalog sidecar JSON")
    p.add_argument("--algebras-file", help="alternative catalog algebra list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nijrank", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse and validate an algebra")
    _add_algebra(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("rank", help="mu_bar matrix and rank of one structure")
    _add_algebra(p)
    p.add_argument("--phi", help="m x m deformation of the standard structure, JSON")
    p.add_argument("--coframe", help="m x 2m co-frame of (1,0)-forms, JSON")
    p.add_argument("--structure", help="named structure of the --catalog entry")
    p.add_argument("--oracle", action="store_true", help="also compute the bracket-oracle rank")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("classify", help="search for every achievable rank")
    _add_algebra(p)
    p.add_argument("--attempts", type=_nonneg, default=1000)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("curve", help="ranks along s -> standard + s*Phi")
    _add_algebra(p)
    p.add_argument("--phi", help="m x m curve direction, JSON")
    p.add_argument("--base", help="m x 2m base co-frame, JSON (default standard)")
    p.add_argument("--samples", required=True, help='comma separated values, e.g. "0,1/4,1/2+i"')
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify-paper", help="run every bundled check")
    p.add_argument("--attempts", type=_nonneg, default=10_000, help="falsification samples per algebra")
    p.add_argument("--existence-attempts", type=_nonneg, default=1000)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--catalog-file", help="alternative catalog sidecar JSON")
    p.add_argument("--algebras-file", help="alternative catalog algebra list")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report, code = args.func(args)
    except InputError as exc:
        print(f"nijrank: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SingularDeformation as exc:
        print(f"nijrank: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    print(dumps(report))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
