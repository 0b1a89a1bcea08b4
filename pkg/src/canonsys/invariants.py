"""Invariant spaces R_d and generation of basic invariants h_1..h_n."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cyclo import CycloNum
from .group import ReflGroup
from .linalg import polys_to_rows, rank, rref, rows_to_polys
from .poly import Poly, evaluate, jacobian, monomials
from .report import Report

__all__ = [
    "InvariantSystem",
    "InvariantSpaceError",
    "RankSelectionError",
    "invariant_space",
    "basic_invariants",
    "verify_basic",
    "constant_ratio",
]

RETRIES = 10


class InvariantSpaceError(RuntimeError):
    """Reynolds images disagree with the Molien series."""


class RankSelectionError(RuntimeError):
    pass


@dataclass
class InvariantSystem:
    polys: list[Poly]
    degrees: list[int]
    seed: int | None = None

    def __post_init__(self) -> None:
        if len(self.polys) != len(self.degrees):
            raise ValueError("one degree per polynomial is required")

    @property
    def n(self) -> int:
        return self.polys[0].n


def invariant_space(g: ReflGroup, d: int) -> list[Poly]:
    """Basis of the degree-d invariants (reduced echelon form, graded-lex pivots)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d in g._inv_space:
        return list(g._inv_space[d])
    basis = monomials(g.n, d)
    images = []
    seen: set = set()
    for e in basis:
        img = g.reynolds(Poly._raw(g.n, {e: CycloNum.from_rational(1, g.conductor)}))
        if not img:
            continue
        key = tuple(sorted((k, v.m, v.num, v.den) for k, v in img.terms.items()))
        if key in seen:
            continue
        seen.add(key)
        images.append(img)
    rows, _ = rref(polys_to_rows(images, basis))
    space = rows_to_polys(rows, basis, g.n)
    expected = g.molien_coeffs(d)[d]
    if len(space) != expected:
        raise InvariantSpaceError(
            f"degree {d}: Reynolds gives dimension {len(space)}, Molien gives {expected}"
        )
    g._inv_space[d] = space
    return list(space)


def _gradient_at(p: Poly, point: list[int]) -> list[CycloNum]:
    return [evaluate(q, point) for q in p.gradient()]


def basic_invariants(g: ReflGroup, seed: int = 0) -> InvariantSystem:
    """Pick n algebraically independent invariants of the group's degrees.

    Candidates come from invariant_space; the sparsest one raising the rank of the
    Jacobian matrix at a seeded random rational point is taken.  The symbolic
    Jacobian is checked to be nonzero at the end.
    """
    degs = g.degrees()
    rng = random.Random(seed)
    for attempt in range(RETRIES):
        height = 2 ** (4 + attempt)
        point = [rng.randint(1, height) for _ in range(g.n)]
        chosen: list[Poly] = []
        grads: list[list[CycloNum]] = []
        for d in degs:
            space = invariant_space(g, d)
            order = sorted(range(len(space)), key=lambda k: (len(space[k]), k))
            pick = None
            for k in order:
                cand = space[k]
                if any(cand == c for c in chosen):
                    continue
                row = _gradient_at(cand, point)
                if rank(grads + [row]) == len(grads) + 1:
                    pick = cand
                    grads.append(row)
                    break
            if pick is None:
                break
            chosen.append(pick)
        if len(chosen) == g.n and jacobian(chosen):
            return InvariantSystem(chosen, list(degs), seed)
    raise RankSelectionError(
        f"could not select {g.n} independent invariants of degrees {degs} after {RETRIES} points"
    )


def constant_ratio(p: Poly, q: Poly) -> CycloNum | None:
    """c with p = c*q, or None if p is not a constant multiple of q (q != 0)."""
    if not q:
        return None
    e, lead = q.leading()
    c = p.coeff(e) / lead
    return c if p == q.scale(c) else None


def verify_basic(g: ReflGroup, sys: InvariantSystem) -> Report:
    rep = Report(f"basic invariants for {g.name}")
    rep.info["degrees"] = list(sys.degrees)
    if sys.seed is not None:
        rep.info["seed"] = sys.seed
    if len(sys.polys) != g.n or any(p.n != g.n for p in sys.polys):
        rep.add("dimension", False, f"expected {g.n} polynomials in {g.n} variables")
        return rep
    homog = [p.homogeneous_degree() for p in sys.polys]
    rep.add(
        "homogeneous",
        homog == list(sys.degrees),
        f"degrees found {homog}",
    )
    bad = [i + 1 for i, p in enumerate(sys.polys) if not g.is_invariant(p)]
    rep.add("invariance", not bad, f"not invariant: h_{bad}" if bad else "")
    rep.add(
        "degree multiset",
        sorted(sys.degrees) == g.degrees(),
        f"expected {g.degrees()}",
    )
    J = jacobian(sys.polys)
    rep.add("jacobian nonzero", bool(J), "" if J else "Jacobian is identically zero")
    c = constant_ratio(J, g.delta) if J else None
    rep.add(
        "jacobian is a multiple of delta",
        c is not None and not c.is_zero(),
        f"J/Delta = {c}" if c is not None else "",
    )
    if c is not None:
        rep.info["J/Delta"] = str(c)
    return rep

