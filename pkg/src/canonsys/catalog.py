"""Shipped generator matrices for a few families of unitary reflection groups."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .cyclo import CycloNum
from .group import DEFAULT_CAP, ReflGroup, UMatrix, analyze

__all__ = ["generators_for", "load_group", "group_spec_json", "parse_group_spec", "CatalogError"]


class CatalogError(ValueError):
    pass


def _perm_matrix(n: int, i: int, j: int, m: int) -> UMatrix:
    one, zero = CycloNum.from_rational(1, m), CycloNum.from_rational(0, m)
    rows = [[one if r == c else zero for c in range(n)] for r in range(n)]
    rows[i][i] = rows[j][j] = zero
    rows[i][j] = rows[j][i] = one
    return UMatrix(rows)


def _diag(entries: list[CycloNum]) -> UMatrix:
    n = len(entries)
    zero = entries[0] * 0
    return UMatrix([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])


def imprimitive(m: int, p: int, n: int) -> list[UMatrix]:
    """Generators of G(m, p, n): monomial matrices with m-th root of unity entries whose
    product is an (m/p)-th root of unity."""
    if m < 1 or p < 1 or n < 1 or m % p:
        raise CatalogError(f"G({m},{p},{n}) needs positive parameters with p | m")
    one = CycloNum.from_rational(1, m)
    if n == 1:
        if m == p:
            raise CatalogError("G(m,m,1) is the trivial group")
        return [_diag([CycloNum.zeta(m, p)])]
    gens = [_perm_matrix(n, i, i + 1, m) for i in range(n - 1)]
    if m > 1:
        z = CycloNum.zeta(m)
        gens.append(_diag([z, z.inv()] + [one] * (n - 2)))
    if p < m:
        gens.append(_diag([CycloNum.zeta(m, p)] + [one] * (n - 1)))
    return gens


def g4() -> list[UMatrix]:
    """Two order-3 reflections generating G4 (order 24) over Q(zeta_12).

    r = I + (w - 1) P with w = zeta_3 and P the orthogonal projector onto a root line;
    the roots meet with |<a, b>|^2 = 1/3.
    """
    m = 12
    w = CycloNum.zeta(m, 4)
    i = CycloNum.zeta(m, 3)
    one, zero = CycloNum.from_rational(1, m), CycloNum.from_rational(0, m)
    r1 = UMatrix([[w, zero], [zero, one]])
    z = (one + i) / 3
    P = [[CycloNum.from_rational(Fraction(1, 3), m), z], [z.conj(), CycloNum.from_rational(Fraction(2, 3), m)]]
    r2 = UMatrix([[(1 if a == b else 0) + (w - 1) * P[a][b] for b in range(2)] for a in range(2)])
    return [r1, r2]


_PATTERNS = [
    (re.compile(r"^cyclic:(\d+)$"), lambda g: ("cyclic", (int(g[0]),))),
    (re.compile(r"^G:(\d+),(\d+),(\d+)$"), lambda g: ("G", tuple(int(x) for x in g))),
    (re.compile(r"^dihedral:(\d+)$"), lambda g: ("dihedral", (int(g[0]),))),
    (re.compile(r"^B:(\d+)$"), lambda g: ("B", (int(g[0]),))),
    (re.compile(r"^G4$"), lambda g: ("G4", ())),
]


def parse_group_spec(spec: str) -> tuple[str, tuple[int, ...]] | None:
    s = spec.replace(" ", "")
    for pat, build in _PATTERNS:
        hit = pat.match(s)
        if hit:
            return build(hit.groups())
    return None


def generators_for(spec: str) -> tuple[str, list[UMatrix]]:
    """Expand a catalog name to (display name, generators)."""
    parsed = parse_group_spec(spec)
    if parsed is None:
        raise CatalogError(f"unknown catalog group {spec!r}")
    kind, args = parsed
    if kind == "cyclic":
        (m,) = args
        if m < 2:
            raise CatalogError("cyclic:m needs m >= 2")
        return f"cyclic:{m}", [_diag([CycloNum.zeta(m)])]
    if kind == "G":
        m, p, n = args
        return f"G({m},{p},{n})", imprimitive(m, p, n)
    if kind == "dihedral":
        (m,) = args
        if m < 2:
            raise CatalogError("dihedral:m needs m >= 2")
        return f"G({m},{m},2)", imprimitive(m, m, 2)
    if kind == "B":
        (n,) = args
        return f"G(2,1,{n})", imprimitive(2, 1, n)
    return "G4", g4()


def _check_g4(group: ReflGroup) -> None:
    if group.order != 24 or group.degrees() != [4, 6]:
        raise CatalogError(
            f"G4 self-check failed: |W| = {group.order}, degrees {group.degrees()}"
        )


def group_spec_json(name: str, generators: list[UMatrix]) -> dict:
    return {
        "name": name,
        "rank": generators[0].n,
        "generators": [[[c.to_literal() for c in row] for row in g.rows] for g in generators],
    }


def _from_json(data: dict) -> tuple[str, list[UMatrix]]:
    try:
        n = int(data["rank"])
        gens = [UMatrix([[CycloNum.from_literal(c) for c in row] for row in g]) for g in data["generators"]]
    except (KeyError, TypeError) as exc:
        raise CatalogError(f"malformed group spec: {exc}") from None
    if not gens or any(g.n != n for g in gens):
        raise CatalogError("generator sizes disagree with the declared rank")
    return str(data.get("name", "W")), gens


def load_group(spec: str, cap: int = DEFAULT_CAP, require_irreducible: bool = False) -> ReflGroup:
    """Resolve a catalog name or a group-spec JSON path and analyze the group."""
    if parse_group_spec(spec) is not None:
        name, gens = generators_for(spec)
    else:
        path = Path(spec)
        if not path.is_file():
            raise CatalogError(f"{spec!r} is neither a catalog group nor a readable file")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CatalogError(f"{spec}: {exc}") from None
        name, gens = _from_json(data)
    group = analyze(gens, cap=cap, name=name, require_irreducible=require_irreducible)
    if name == "G4":
        _check_g4(group)
    return group
