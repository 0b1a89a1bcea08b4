"""Command-line front end.

    canonsys info SPEC
    canonsys invariants SPEC [--seed N] [--from FILE] [--out FILE]
    canonsys canonical SPEC [--seed N] [--from FILE] [--out FILE] [--latex]
    canonsys verify SPEC SYSTEM.json

SPEC is a catalog name (cyclic:m, G:m,p,n, dihedral:m, B:n, G4) or a group-spec JSON
file.  Exit codes: 0 all checks pass, 1 verification failure, 2 input/usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import io
from .canonical import DegenerateCandidateError, candidates, orthogonalize, verify_canonical
from .catalog import CatalogError, load_group
from .cyclo import ConductorCapError
from .group import DEFAULT_CAP, GroupError, ReflGroup
from .invariants import RankSelectionError, basic_invariants, verify_basic
from .poly import DimensionMismatch
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("canonsys")


def _emit(args, payload: dict, report: Report) -> None:
    if args.json:
        print(io.dumps({**payload, "report": report.to_dict()}), end="")
    else:
        print(report.format())


def _group(args) -> ReflGroup:
    return load_group(args.group, cap=args.cap, require_irreducible=args.strict_irreducible)


def cmd_info(args) -> int:
    g = _group(args)
    degs = g.degrees()
    top = g.delta.homogeneous_degree()
    D = args.max_degree if args.max_degree is not None else 2 * top
    rep = Report(f"group {g.name}")
    rep.info.update(
        {
            "rank": g.n,
            "order": g.order,
            "reflections": len(g.reflections),
            "hyperplanes": [{"L": str(h.L), "e": h.e} for h in g.hyperplanes],
            "delta": str(g.delta),
            "degrees": degs,
            "irreducibility": str(g.irreducibility),
            "molien": g.molien_coeffs(D),
        }
    )
    prod = 1
    for m in degs:
        prod *= m
    rep.add("prod m_i = |W|", prod == g.order, f"{prod} vs {g.order}")
    rep.add(
        "sum (m_i - 1) = #reflections = deg Delta",
        sum(m - 1 for m in degs) == len(g.reflections) == top,
        f"{sum(m - 1 for m in degs)}, {len(g.reflections)}, {top}",
    )
    _emit(args, {}, rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_invariants(args) -> int:
    g = _group(args)
    if args.from_file:
        system = io.invariants_from_json(io.read_json(args.from_file))
    else:
        system = basic_invariants(g, args.seed)
    rep = verify_basic(g, system)
    data = io.invariants_to_json(system)
    if args.out:
        io.write_json(args.out, data)
        rep.info["written"] = str(args.out)
    elif not args.json:
        print(io.dumps(data), end="")
    _emit(args, {"system": data} if args.json else {}, rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_canonical(args) -> int:
    g = _group(args)
    if args.from_file:
        system = io.invariants_from_json(io.read_json(args.from_file))
        pre = verify_basic(g, system)
        if not pre.passed:
            _emit(args, {}, pre)
            return EXIT_FAIL
    else:
        system = basic_invariants(g, args.seed)
    cs = orthogonalize(g, candidates(g, system))
    rep = verify_canonical(g, cs)
    data = io.canonical_to_json(cs)
    if args.out:
        io.write_json(args.out, data)
        rep.info["written"] = str(args.out)
        if args.latex:
            tex = Path(args.out).with_suffix(".tex")
            tex.write_text(io.canonical_latex(cs, g.name))
            rep.info["latex"] = str(tex)
    else:
        if not args.json:
            print(io.dumps(data), end="")
        if args.latex:
            print(io.canonical_latex(cs, g.name), end="")
    _emit(args, {"system": data} if args.json else {}, rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    g = _group(args)
    cs = io.canonical_from_json(io.read_json(args.system))
    if any(p.n != g.n for p in cs.polys):
        raise DimensionMismatch(f"system has {cs.polys[0].n} variables, group has rank {g.n}")
    rep = verify_canonical(g, cs)
    _emit(args, {}, rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canonsys", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("group", help="catalog name or group-spec JSON path")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="closure size cap")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument(
        "--strict-irreducible", action="store_true", help="reject reducible groups"
    )
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="group facts")
    p.add_argument("--max-degree", type=int, default=None, help="Molien range (default 2 deg Delta)")
    p.set_defaults(func=cmd_info)

    for name, func, helptext in [
        ("invariants", cmd_invariants, "generate or check basic invariants"),
        ("canonical", cmd_canonical, "build and verify a canonical system"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--from", dest="from_file", default=None, help="invariant-system JSON")
        p.add_argument("--out", default=None, help="output JSON path")
        p.add_argument("--max-degree", type=int, default=None, help=argparse.SUPPRESS)
        if name == "canonical":
            p.add_argument("--latex", action="store_true", help="also emit LaTeX")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[common], help="verify a canonical-system JSON file")
    p.add_argument("system", help="canonical-system JSON path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s"
    )
    try:
        return args.func(args)
    except (CatalogError, io.FormatError, GroupError, DimensionMismatch, ConductorCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DegenerateCandidateError, RankSelectionError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except json.JSONDecodeError as exc:  # pragma: no cover - read_json wraps these
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
