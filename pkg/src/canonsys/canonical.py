"""Canonical systems of basic invariants.

The construction: for basic invariants h_1..h_n put

    f_i = sum_j x_j * phi(d_j h_i),    phi(f) = (f* Delta)* Delta,

then orthogonalize with respect to <f, g> = (f* g)(0).  Different-degree pairs come
out orthogonal on their own; only equal-degree blocks need Gram-Schmidt.  A system is
stored as pairs (g_i, c_i) standing for f_i = g_i / sqrt(c_i), so everything stays in
the cyclotomic field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CycloNum
from .group import ReflGroup
from .invariants import InvariantSystem, basic_invariants, constant_ratio, invariant_space, verify_basic
from .linalg import polys_to_rows, rank
from .poly import Poly, inner, jacobian, monomials, star_apply
from .report import Report

__all__ = [
    "CanonicalSystem",
    "HarmonicWitness",
    "DegenerateCandidateError",
    "phi",
    "w_equivariance_check",
    "candidates",
    "orthogonalize",
    "verify_canonical",
    "steinberg_membership",
    "harmonic_dims",
    "coinvariant_series",
    "euler_check",
    "canonical_system",
]


class DegenerateCandidateError(ValueError):
    """The candidate system is not a system of basic invariants."""


@dataclass
class CanonicalSystem:
    pairs: list[tuple[Poly, CycloNum]]
    degrees: list[int]

    @property
    def polys(self) -> list[Poly]:
        return [g for g, _ in self.pairs]


@dataclass
class HarmonicWitness:
    degree: int
    rank: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.rank == self.expected


def phi(g: ReflGroup, f: Poly) -> Poly:
    """(f* Delta)* Delta; lands in the harmonic space and kills the ideal I."""
    return star_apply(star_apply(f, g.delta), g.delta)


def w_equivariance_check(g: ReflGroup, w: int, f: Poly) -> bool:
    return g.act(w, phi(g, f)) == phi(g, g.act(w, f))


def euler_check(h: Poly) -> bool:
    """sum_j x_j d_j h == deg(h) h for homogeneous h."""
    d = h.homogeneous_degree()
    if d is None:
        d = 0
        if h:
            raise ValueError("euler_check needs a homogeneous polynomial")
    lhs = Poly.zero(h.n)
    for j in range(1, h.n + 1):
        lhs = lhs + Poly.var(h.n, j) * h.partial(j)
    return lhs == h.scale(d)


def candidates(g: ReflGroup, sys: InvariantSystem) -> list[Poly]:
    """sum_j x_j phi(d_j h_i) for each basic invariant h_i."""
    out = []
    for i, h in enumerate(sys.polys):
        f = Poly.zero(g.n)
        for j in range(1, g.n + 1):
            dh = h.partial(j)
            if dh:
                f = f + Poly.var(g.n, j) * phi(g, dh)
        if not f:
            raise DegenerateCandidateError(f"candidate {i + 1} vanishes; h_{i + 1} lies in I^2")
        if f.homogeneous_degree() != h.homogeneous_degree():
            raise DegenerateCandidateError(f"candidate {i + 1} has the wrong degree")
        out.append(f)
    if not jacobian(out):
        raise DegenerateCandidateError("candidates are algebraically dependent")
    return out


def orthogonalize(g: ReflGroup, cands: list[Poly]) -> CanonicalSystem:
    """Gram-Schmidt inside equal-degree blocks (input order), then normalize."""
    degs = []
    for k, f in enumerate(cands):
        d = f.homogeneous_degree()
        if d is None:
            raise DegenerateCandidateError(f"candidate {k + 1} is not homogeneous")
        degs.append(d)
    order = sorted(range(len(cands)), key=lambda k: (degs[k], k))
    done: list[Poly] = []
    done_deg: list[int] = []
    for k in order:
        u = cands[k]
        for v, dv in zip(done, done_deg):
            if dv != degs[k]:
                continue
            u = u - v.scale(inner(v, u) / inner(v, v))
        if not u:
            raise DegenerateCandidateError(f"degree-{degs[k]} block is linearly dependent")
        done.append(u)
        done_deg.append(degs[k])
    gs = [u.monic() for u in done]
    for i, lo in enumerate(gs):
        for j, hi in enumerate(gs):
            if done_deg[i] < done_deg[j] and star_apply(lo, hi):
                raise DegenerateCandidateError(
                    f"g_{i + 1}* g_{j + 1} != 0 across degrees; input was not a basic system"
                )
    return CanonicalSystem([(u, inner(u, u)) for u in gs], done_deg)


def canonical_system(g: ReflGroup, sys: InvariantSystem | None = None, seed: int = 0) -> CanonicalSystem:
    """Full pipeline: basic invariants -> candidates -> orthogonalize."""
    if sys is None:
        sys = basic_invariants(g, seed)
    return orthogonalize(g, candidates(g, sys))


def verify_canonical(g: ReflGroup, cs: CanonicalSystem) -> Report:
    rep = Report(f"canonical system for {g.name}")
    rep.info["degrees"] = list(cs.degrees)
    gs = cs.polys
    n = g.n
    if len(gs) != n or any(p.n != n for p in gs):
        rep.add("dimension", False, f"expected {n} polynomials in {n} variables")
        return rep
    homog = [p.homogeneous_degree() for p in gs]
    rep.add(
        "degrees",
        homog == list(cs.degrees) and sorted(cs.degrees) == g.degrees(),
        f"found {homog}, group degrees {g.degrees()}",
    )

    bad = [(i + 1, j + 1) for i in range(n) for j in range(n) if i != j and star_apply(gs[i], gs[j])]
    rep.add("(a) g_i* g_j = 0 for i != j", not bad, f"nonzero at {bad}" if bad else "")

    bad_norm = []
    for i, (p, c) in enumerate(cs.pairs):
        s = star_apply(p, p)
        ok = s == Poly.constant(n, c) and c.is_real() and not c.is_zero()
        r = c.as_rational()
        if r is not None and r <= 0:
            ok = False
        if not ok:
            bad_norm.append(i + 1)
    rep.add("(b) g_i* g_i = c_i, real and nonzero", not bad_norm, f"fails for {bad_norm}" if bad_norm else "")

    bad_inv = [i + 1 for i, p in enumerate(gs) if not g.is_invariant(p)]
    rep.add("(c) invariance", not bad_inv, f"not invariant: {bad_inv}" if bad_inv else "")

    J = jacobian(gs)
    c = constant_ratio(J, g.delta) if J else None
    rep.add(
        "(d) jacobian is a nonzero multiple of delta",
        c is not None and not c.is_zero(),
        f"J/Delta = {c}" if c is not None else "Jacobian is not a multiple of Delta",
    )

    bad_sweep = []
    for i, p in enumerate(gs):
        d = p.homogeneous_degree() or 0
        for ell in range(1, d):
            for q in invariant_space(g, ell):
                if star_apply(q, p):
                    bad_sweep.append((i + 1, ell))
                    break
    rep.add(
        "(e) lower-degree invariants annihilate each g_i",
        not bad_sweep,
        f"(i, degree) failures {bad_sweep}" if bad_sweep else "",
    )
    rep.info["c"] = [str(c) for _, c in cs.pairs]
    return rep


def steinberg_membership(g: ReflGroup, f: Poly) -> tuple[Poly, bool]:
    """(f* Delta, f* Delta == 0); the flag decides f in I for homogeneous f."""
    r = star_apply(f, g.delta)
    return r, not r


def coinvariant_series(degrees: list[int]) -> list[int]:
    """Coefficients of prod_i (1 + t + ... + t^(m_i - 1))."""
    out = [1]
    for m in degrees:
        new = [0] * (len(out) + m - 1)
        for k, a in enumerate(out):
            for s in range(m):
                new[k + s] += a
        out = new
    return out


def harmonic_dims(g: ReflGroup, D: int | None = None) -> list[HarmonicWitness]:
    """Rank of phi on S_d for d = 0..D, with the coinvariant prediction alongside."""
    top = g.delta.homogeneous_degree()
    if D is None:
        D = top
    if D > top:
        raise ValueError(f"D = {D} exceeds deg Delta = {top}")
    expected = coinvariant_series(g.degrees())
    out = []
    for d in range(D + 1):
        basis = monomials(g.n, d)
        images = [phi(g, Poly._raw(g.n, {e: CycloNum.from_rational(1, g.conductor)})) for e in basis]
        r = rank(polys_to_rows(images, basis))
        out.append(HarmonicWitness(d, r, expected[d] if d < len(expected) else 0))
    return out


def verify_pipeline(g: ReflGroup, sys: InvariantSystem) -> tuple[Report, CanonicalSystem | None]:
    """verify_basic then the full construction; returns the basic report and result."""
    rep = verify_basic(g, sys)
    if not rep.passed:
        return rep, None
    return rep, orthogonalize(g, candidates(g, sys))
