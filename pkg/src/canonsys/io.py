"""JSON and LaTeX serialization for polynomials, invariant systems and canonical systems."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .canonical import CanonicalSystem
from .cyclo import CycloNum
from .invariants import InvariantSystem
from .poly import Poly

__all__ = [
    "FormatError",
    "poly_to_json",
    "poly_from_json",
    "invariants_to_json",
    "invariants_from_json",
    "canonical_to_json",
    "canonical_from_json",
    "dumps",
    "read_json",
    "write_json",
    "cyclo_latex",
    "poly_latex",
    "canonical_latex",
]


class FormatError(ValueError):
    pass


def poly_to_json(p: Poly) -> dict[str, Any]:
    return {
        "n": p.n,
        "terms": [{"exp": list(e), "coeff": c.to_literal()} for e, c in p.sorted_terms()],
    }


def poly_from_json(data: Any) -> Poly:
    try:
        n = int(data["n"])
        terms = {}
        for t in data["terms"]:
            e = tuple(int(a) for a in t["exp"])
            if e in terms:
                raise FormatError(f"duplicate exponent {list(e)}")
            terms[e] = CycloNum.from_literal(str(t["coeff"]))
        return Poly(n, terms)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed polynomial: {exc!r}") from None
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from None


def invariants_to_json(sys: InvariantSystem) -> dict[str, Any]:
    out: dict[str, Any] = {"degrees": list(sys.degrees), "polys": [poly_to_json(p) for p in sys.polys]}
    if sys.seed is not None:
        out["seed"] = sys.seed
    return out


def invariants_from_json(data: Any) -> InvariantSystem:
    try:
        polys = [poly_from_json(p) for p in data["polys"]]
        degrees = [int(d) for d in data.get("degrees") or [p.homogeneous_degree() or 0 for p in polys]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed invariant system: {exc!r}") from None
    if not polys or len(polys) != len(degrees):
        raise FormatError("invariant system needs one degree per polynomial")
    return InvariantSystem(polys, degrees, data.get("seed"))


def canonical_to_json(cs: CanonicalSystem) -> dict[str, Any]:
    return {
        "degrees": list(cs.degrees),
        "pairs": [{"g": poly_to_json(g), "c": c.to_literal()} for g, c in cs.pairs],
    }


def canonical_from_json(data: Any) -> CanonicalSystem:
    try:
        pairs = [(poly_from_json(p["g"]), CycloNum.from_literal(str(p["c"]))) for p in data["pairs"]]
        degrees = [int(d) for d in data.get("degrees") or [g.homogeneous_degree() or 0 for g, _ in pairs]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed canonical system: {exc!r}") from None
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if not pairs or len(pairs) != len(degrees):
        raise FormatError("canonical system needs one degree per pair")
    return CanonicalSystem(pairs, degrees)


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, data: Any) -> None:
    Path(path).write_text(dumps(data))


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None


# -- LaTeX ----------------------------------------------------------------------------


def _frac_latex(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    sign = "-" if r < 0 else ""
    return f"{sign}\\frac{{{abs(r.numerator)}}}{{{r.denominator}}}"


def cyclo_latex(c: CycloNum) -> str:
    r = c.as_rational()
    if r is not None:
        return _frac_latex(r)
    parts = []
    for k, r in enumerate(c.coeffs):
        if not r:
            continue
        z = "" if k == 0 else (f"\\zeta_{{{c.m}}}" if k == 1 else f"\\zeta_{{{c.m}}}^{{{k}}}")
        if not z:
            parts.append(_frac_latex(r))
        elif r == 1:
            parts.append(z)
        elif r == -1:
            parts.append("-" + z)
        else:
            parts.append(_frac_latex(r) + z)
    return " + ".join(parts).replace("+ -", "- ")


def poly_latex(p: Poly) -> str:
    if not p:
        return "0"
    names = ["x", "y", "z"] if p.n <= 3 else [f"x_{{{i}}}" for i in range(1, p.n + 1)]
    parts = []
    for e, c in p.sorted_terms():
        mono = " ".join(names[i] if a == 1 else f"{names[i]}^{{{a}}}" for i, a in enumerate(e) if a)
        r = c.as_rational()
        if r is not None:
            if mono and r == 1:
                parts.append(mono)
            elif mono and r == -1:
                parts.append("-" + mono)
            else:
                parts.append((_frac_latex(r) + " " + mono).strip())
        else:
            parts.append(f"\\left({cyclo_latex(c)}\\right) {mono}".strip())
    return " + ".join(parts).replace("+ -", "- ")


def canonical_latex(cs: CanonicalSystem, name: str = "") -> str:
    lines = [f"% canonical system{' for ' + name if name else ''}", "\\begin{align*}"]
    rows = []
    for i, (g, c) in enumerate(cs.pairs, start=1):
        rows.append(f"f_{{{i}}} &= \\frac{{1}}{{\\sqrt{{{cyclo_latex(c)}}}}}\\left({poly_latex(g)}\\right)")
    lines.append(" \\\\\n".join(rows))
    lines.append("\\end{align*}")
    return "\n".join(lines) + "\n"
