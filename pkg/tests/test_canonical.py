import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canonsys.canonical import (
    CanonicalSystem,
    DegenerateCandidateError,
    candidates,
    canonical_system,
    coinvariant_series,
    euler_check,
    harmonic_dims,
    orthogonalize,
    phi,
    steinberg_membership,
    verify_canonical,
    w_equivariance_check,
)
from canonsys.cyclo import CycloNum
from canonsys.invariants import InvariantSystem, basic_invariants
from canonsys.linalg import polys_to_rows, rank
from canonsys.poly import Poly, inner, monomials, star_apply
from conftest import CATALOG, group, random_poly

x = Poly.var(2, 1)
y = Poly.var(2, 2)
X = Poly.var(1, 1)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_phi_rank_one(m):
    g = group(f"cyclic:{m}")
    assert phi(g, X ** (m - 1)) == (X ** (m - 1)).scale(math.factorial(m - 1))


def test_phi_examples_b2():
    g = group("B:2")
    assert phi(g, x**2 + y**2) == 0
    assert phi(g, Poly.constant(2, 1)) == Poly.constant(2, inner(g.delta, g.delta))
    assert inner(g.delta, g.delta) != 0


def test_w_equivariance_examples():
    b2 = group("B:2")
    swap = next(i for i, A in enumerate(b2.elements) if A.rows[0][1] == 1 and A.rows[1][0] == 1)
    assert w_equivariance_check(b2, swap, x**2)
    assert w_equivariance_check(group("cyclic:3"), 1, X)
    assert w_equivariance_check(group("G4"), 5, Poly.zero(2))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_candidates_rank_one(m):
    g = group(f"cyclic:{m}")
    (c,) = candidates(g, InvariantSystem([X**m], [m]))
    assert c == (X**m).scale(math.factorial(m))


def test_candidates_b2():
    g = group("B:2")
    c1, c2 = candidates(g, InvariantSystem([x**2 + y**2, x**4 + y**4], [2, 4]))
    assert c1.monic() == x**2 + y**2
    assert g.is_invariant(c2) and c2.homogeneous_degree() == 4
    # already orthogonal to (x^2+y^2)^2 across degrees
    assert star_apply(x**2 + y**2, c2) == 0
    assert c2.monic() == x**4 - (x**2 * y**2).scale(6) + y**4


def test_candidates_reject_decomposable_input():
    g = group("B:2")
    with pytest.raises(DegenerateCandidateError):
        candidates(g, InvariantSystem([x**2 + y**2, (x**2 + y**2) ** 2], [2, 4]))


def test_orthogonalize_rank_one():
    for m in range(2, 7):
        g = group(f"cyclic:{m}")
        cs = orthogonalize(g, [(X**m).scale(7)])
        assert cs.pairs == [(X**m, CycloNum.from_rational(math.factorial(m)))]
        assert star_apply(X**m, X**m) == math.factorial(m)


def test_orthogonalize_b2_golden():
    g = group("B:2")
    cs = canonical_system(g, InvariantSystem([x**2 + y**2, x**4 + y**4], [2, 4]))
    (g1, c1), (g2, c2) = cs.pairs
    assert g1 == x**2 + y**2 and c1 == 4  # <x^2,x^2> + <y^2,y^2> = 2! + 2!
    assert g2 == x**4 - (x**2 * y**2).scale(6) + y**4
    assert c2 == 24 + 36 * 4 + 24 == 192
    assert inner((x**2 + y**2) ** 2, g2) == 0


def test_orthogonalize_equal_degree_block():
    g = group("G:2,2,2")
    cs = canonical_system(g)
    (g1, _), (g2, _) = cs.pairs
    assert cs.degrees == [2, 2]
    assert inner(g1, g2) == 0
    with pytest.raises(DegenerateCandidateError):
        orthogonalize(g, [x**2 + y**2, (x**2 + y**2).scale(3)])


def test_verify_canonical_examples():
    g = group("B:2")
    rep = verify_canonical(g, canonical_system(g))
    assert rep.passed, rep.format()
    assert star_apply(x**2 + y**2, x**4 - (x**2 * y**2).scale(6) + y**4) == 0

    bad = CanonicalSystem([(x**2 + y**2, CycloNum.from_rational(4)), (x**4 + y**4, CycloNum.from_rational(48))], [2, 4])
    rep = verify_canonical(g, bad)
    assert not rep["(a) g_i* g_j = 0 for i != j"].passed
    assert star_apply(x**2 + y**2, x**4 + y**4) == (x**2 + y**2).scale(12)

    mu2 = group("cyclic:2")
    ok = CanonicalSystem([(X**2, CycloNum.from_rational(2))], [2])
    assert verify_canonical(mu2, ok).passed
    wrong_c = CanonicalSystem([(X**2, CycloNum.from_rational(3))], [2])
    assert not verify_canonical(mu2, wrong_c).passed


def test_steinberg_examples():
    g = group("B:2")
    r, member = steinberg_membership(g, x**2 + y**2)
    assert member and r == 0
    r, member = steinberg_membership(g, x**2 - y**2)
    assert not member and r == (x * y).scale(12)
    for spec in ["B:2", "G4", "cyclic:4"]:
        h = group(spec)
        r, member = steinberg_membership(h, h.delta)
        assert not member and r == Poly.constant(h.n, inner(h.delta, h.delta))


def test_harmonic_dims_examples():
    ranks = [w.rank for w in harmonic_dims(group("B:2"), 4)]
    assert ranks == [1, 2, 2, 2, 1]
    for m in range(2, 7):
        ws = harmonic_dims(group(f"cyclic:{m}"))
        assert [w.rank for w in ws] == [1] * m
    assert coinvariant_series([2, 4]) == [1, 2, 2, 2, 1]
    with pytest.raises(ValueError):
        harmonic_dims(group("B:2"), 5)


def test_euler_examples():
    assert euler_check(x**2 * y)
    assert euler_check(Poly.constant(2, 5))
    assert euler_check(group("B:2").delta)


@pytest.mark.parametrize("spec", CATALOG)
def test_pipeline_canonical(spec):
    g = group(spec)
    cs = canonical_system(g)
    rep = verify_canonical(g, cs)
    assert rep.passed, rep.format()
    for gi, _ in cs.pairs:
        assert gi.leading()[1] == 1


@pytest.mark.parametrize("spec", ["B:2", "G4", "G:3,1,2", "B:3"])
def test_candidates_pass_verify_basic(spec):
    from canonsys.invariants import verify_basic

    g = group(spec)
    sys = basic_invariants(g)
    cands = candidates(g, sys)
    assert verify_basic(g, InvariantSystem(cands, sys.degrees)).passed


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["B:2", "G4", "dihedral:5"]))
def test_phi_linear_and_equivariant(seed, spec):
    g = group(spec)
    rng = random.Random(seed)
    f = random_poly(rng, 2, g.conductor, 4)
    h = random_poly(rng, 2, g.conductor, 4)
    a = CycloNum(g.conductor, [rng.randint(-3, 3) for _ in range(2)])
    assert phi(g, f.scale(a) + h) == phi(g, f).scale(a) + phi(g, h)
    w = rng.randrange(g.order)
    assert w_equivariance_check(g, w, f)


@pytest.mark.parametrize("spec", ["B:2", "G4", "dihedral:4"])
def test_phi_kernel_is_steinberg_kernel(spec):
    g = group(spec)
    for d in range(g.delta.homogeneous_degree() + 1):
        basis = monomials(2, d)
        mons = [Poly.monomial(e) for e in basis]
        r_phi = rank(polys_to_rows([phi(g, p) for p in mons], basis))
        contracted = [star_apply(p, g.delta) for p in mons]
        img_basis = monomials(2, g.delta.homogeneous_degree() - d)
        r_star = rank(polys_to_rows(contracted, img_basis))
        assert r_phi == r_star
