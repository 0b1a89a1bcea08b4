"""Finite unitary reflection groups given by matrix generators.

Matrices act on V; the variables x_1..x_n are the dual coordinates, so an element with
matrix A acts on polynomials by (w.f)(v) = f(A^-1 v), i.e. by substituting
x_i -> sum_j (A^-1)_ij x_j with A^-1 = A^H.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .cyclo import CycloNum, common_conductor
from .linalg import rref
from .poly import Poly, Substitution

__all__ = [
    "UMatrix",
    "Hyperplane",
    "ReflGroup",
    "GroupError",
    "CapExceeded",
    "NotUnitary",
    "ReducibleGroupError",
    "NotReflectionGroup",
    "DegreeExtractionError",
    "closure",
    "analyze",
]

log = logging.getLogger(__name__)

DEFAULT_CAP = 20000


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


class NotUnitary(GroupError):
    pass


class ReducibleGroupError(GroupError):
    pass


class NotReflectionGroup(GroupError):
    pass


class DegreeExtractionError(NotReflectionGroup):
    pass


class UMatrix:
    """Square matrix with CycloNum entries, all at one conductor."""

    __slots__ = ("n", "rows", "_key")

    def __init__(self, rows: Sequence[Sequence[CycloNum | int | Fraction]]) -> None:
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        self.n = n
        self.rows = tuple(tuple(CycloNum.coerce(c) for c in r) for r in rows)
        self._key = None

    @classmethod
    def identity(cls, n: int, m: int = 1) -> UMatrix:
        one, zero = CycloNum.from_rational(1, m), CycloNum.from_rational(0, m)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def promote(self, m: int) -> UMatrix:
        return UMatrix([[c.promote(m) for c in r] for r in self.rows])

    def entries(self):
        for r in self.rows:
            yield from r

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple((c.m, c.num, c.den) for c in self.entries())
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.key())

    def __matmul__(self, other: UMatrix) -> UMatrix:
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = None
                for a, b in zip(r, col):
                    if a.is_zero() or b.is_zero():
                        continue
                    p = a * b
                    acc = p if acc is None else acc + p
                row.append(acc if acc is not None else r[0] * 0)
            out.append(row)
        m = UMatrix.__new__(UMatrix)
        m.n, m.rows, m._key = n, tuple(tuple(r) for r in out), None
        return m

    def adjoint(self) -> UMatrix:
        return UMatrix([[self.rows[j][i].conj() for j in range(self.n)] for i in range(self.n)])

    def is_identity(self) -> bool:
        return all(c == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, c in enumerate(r))

    def is_unitary(self) -> bool:
        return (self @ self.adjoint()).is_identity()

    def trace(self) -> CycloNum:
        return reduce(lambda a, b: a + b, (self.rows[i][i] for i in range(self.n)))

    def det(self) -> CycloNum:
        return _det_scalar([list(r) for r in self.rows])

    def minus_identity(self) -> list[list[CycloNum]]:
        return [[c - 1 if i == j else c for j, c in enumerate(r)] for i, r in enumerate(self.rows)]

    def charpoly_reversed(self) -> list[CycloNum]:
        """Coefficients of det(I - tA), constant term first (Faddeev-LeVerrier)."""
        n = self.n
        m = self.rows[0][0].m
        zero = CycloNum.from_rational(0, m)
        ident = UMatrix.identity(n, m)
        coeffs = [CycloNum.from_rational(1, m)]
        Mk = UMatrix([[zero] * n for _ in range(n)])
        for k in range(1, n + 1):
            Mk = _add(self @ Mk, _scal(ident, coeffs[-1]))
            coeffs.append(-(self @ Mk).trace() / k)
        return coeffs

    def __repr__(self) -> str:
        return "UMatrix([" + ", ".join("[" + ", ".join(str(c) for c in r) + "]" for r in self.rows) + "])"


def _add(a: UMatrix, b: UMatrix) -> UMatrix:
    return UMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(a.rows, b.rows)])


def _scal(a: UMatrix, c: CycloNum) -> UMatrix:
    return UMatrix([[x * c for x in r] for r in a.rows])


def _det_scalar(mat: list[list[CycloNum]]) -> CycloNum:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = None
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        t = mat[0][j] * _det_scalar(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total if total is not None else mat[0][0] * 0


def closure(generators: Sequence[UMatrix], cap: int = DEFAULT_CAP) -> list[UMatrix]:
    """Breadth-first product closure, identity first, BFS order thereafter."""
    if not generators:
        raise GroupError("at least one generator is required")
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise GroupError("generators must all have the same size")
    m = common_conductor(c for g in generators for c in g.entries())
    gens = [g.promote(m) for g in generators]
    for k, g in enumerate(gens):
        if not g.is_unitary():
            raise NotUnitary(f"generator {k} is not unitary")
    ident = UMatrix.identity(n, m)
    seen = {ident.key()}
    elements = [ident]
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = a @ g
            k = b.key()
            if k in seen:
                continue
            if len(elements) >= cap:
                raise CapExceeded(f"group closure exceeded the cap of {cap} elements")
            seen.add(k)
            elements.append(b)
            queue.append(b)
    return elements


@dataclass
class Hyperplane:
    L: Poly
    e: int
    fixing_reflections: list[int]


@dataclass
class ReflGroup:
    name: str
    n: int
    elements: list[UMatrix]
    generators: list[int]
    reflections: list[int]
    hyperplanes: list[Hyperplane]
    delta: Poly
    conductor: int
    irreducibility: Fraction
    _subst: dict = field(default_factory=dict, repr=False)
    _inv_subst: dict = field(default_factory=dict, repr=False)
    _molien: list = field(default_factory=list, repr=False)
    _degrees: list = field(default_factory=list, repr=False)
    _dets: dict = field(default_factory=dict, repr=False)
    _inv_space: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_irreducible(self) -> bool:
        return self.irreducibility == 1

    def det(self, w: int) -> CycloNum:
        if w not in self._dets:
            self._dets[w] = self.elements[w].det()
        return self._dets[w]

    def _substitution(self, w: int) -> Substitution:
        s = self._subst.get(w)
        if s is None:
            s = Substitution(self.elements[w].adjoint().rows)
            self._subst[w] = s
        return s

    def act(self, w: int, f: Poly) -> Poly:
        """Contravariant action (w.f)(v) = f(w^-1 v)."""
        if not 0 <= w < len(self.elements):
            raise IndexError(f"element index {w} out of range")
        return self._substitution(w)(f)

    def reynolds(self, f: Poly) -> Poly:
        """Average of w.f over the group."""
        acc: dict = {}
        for w in range(len(self.elements)):
            for e, c in self.act(w, f).terms.items():
                acc[e] = acc[e] + c if e in acc else c
        total = Poly._raw(f.n, {e: c for e, c in acc.items() if not c.is_zero()})
        return total.scale(Fraction(1, self.order))

    def is_invariant(self, f: Poly, all_elements: bool = False) -> bool:
        idx = range(len(self.elements)) if all_elements else self.generators
        return all(self.act(w, f) == f for w in idx)

    def molien_coeffs(self, D: int) -> list[int]:
        """a_0..a_D of the Hilbert series of the invariant ring."""
        if D < 0:
            raise ValueError("D must be nonnegative")
        if len(self._molien) > D:
            return self._molien[: D + 1]
        buckets: dict[tuple, int] = {}
        polys: dict[tuple, list[CycloNum]] = {}
        for A in self.elements:
            cp = A.charpoly_reversed()
            key = tuple((c.m, c.num, c.den) for c in cp)
            buckets[key] = buckets.get(key, 0) + 1
            polys[key] = cp
        m = self.conductor
        total = [CycloNum.from_rational(0, m)] * (D + 1)
        for key, count in buckets.items():
            series = _invert_series(polys[key], D)
            total = [t + s * count for t, s in zip(total, series)]
        out = []
        for d, t in enumerate(total):
            r = t.as_rational()
            if r is not None:
                r = r / self.order
            if r is None or r.denominator != 1 or r < 0:
                raise NotReflectionGroup(
                    f"Molien coefficient {d} is not a nonnegative integer ({t}); broken group input"
                )
            out.append(int(r))
        self._molien = out
        return list(out)

    def degrees(self) -> list[int]:
        """Degrees m_1 <= ... <= m_n read off the Molien series."""
        if self._degrees:
            return list(self._degrees)
        D = len(self.reflections) + 1
        a = self.molien_coeffs(D)
        b = [1] + [0] * D
        degs: list[int] = []
        for _ in range(self.n):
            d = next((k for k in range(1, D + 1) if a[k] != b[k]), None)
            if d is None or a[d] < b[d]:
                raise DegreeExtractionError(
                    f"Molien series of {self.name} is not of the form prod 1/(1-t^m_i)"
                )
            degs.append(d)
            for k in range(d, D + 1):
                b[k] += b[k - d]
        if a != b:
            raise DegreeExtractionError(f"Molien series of {self.name} has extra terms beyond {degs}")
        prod = 1
        for d in degs:
            prod *= d
        if prod != self.order or sum(d - 1 for d in degs) != len(self.reflections):
            raise DegreeExtractionError(
                f"degrees {degs} violate prod m_i = |W| or sum (m_i - 1) = #reflections"
            )
        self._degrees = degs
        return list(degs)


def _invert_series(p: list[CycloNum], D: int) -> list[CycloNum]:
    # p[0] == 1
    out = [p[0]]
    for j in range(1, D + 1):
        acc = None
        for k in range(1, min(j, len(p) - 1) + 1):
            if p[k].is_zero():
                continue
            t = p[k] * out[j - k]
            acc = t if acc is None else acc + t
        out.append(-acc if acc is not None else p[0] * 0)
    return out


def _element_order(z: CycloNum, bound: int) -> int:
    acc = z
    for k in range(1, bound + 1):
        if acc == 1:
            return k
        acc = acc * z
    raise GroupError("eigenvalue is not a root of unity of bounded order")


def analyze(
    generators: Sequence[UMatrix],
    cap: int = DEFAULT_CAP,
    name: str = "W",
    require_irreducible: bool = False,
) -> ReflGroup:
    """Enumerate the group and extract reflections, hyperplanes and Delta.

    Groups fixing a nonzero vector are always rejected.  Essential reducible groups
    (products of irreducible reflection groups) are accepted unless
    ``require_irreducible`` is set.
    """
    elements = closure(generators, cap)
    n = elements[0].n
    m = elements[0].rows[0][0].m
    order = len(elements)

    traces = [A.trace() for A in elements]
    fixed_dim = reduce(lambda a, b: a + b, traces) / order
    norm = reduce(lambda a, b: a + b, (t.abs2() for t in traces)) / order
    cert = norm.as_rational()
    if fixed_dim != 0:
        raise ReducibleGroupError(
            f"{name} fixes a subspace of dimension {fixed_dim}; decompose the representation "
            "externally and pass only the essential part"
        )
    if cert != 1 and require_irreducible:
        raise ReducibleGroupError(
            f"{name} is reducible (sum |tr w|^2 / |W| = {cert}); decompose the representation "
            "externally and pass each irreducible component"
        )
    if cert != 1:
        log.warning("%s is reducible with %s irreducible components", name, cert)

    keys = {A.key(): i for i, A in enumerate(elements)}
    gen_idx = sorted({keys[g.promote(m).key()] for g in generators})

    reflections: list[int] = []
    planes: dict[tuple, Hyperplane] = {}
    for i, A in enumerate(elements[1:], start=1):
        rows, _ = rref(A.minus_identity())
        if len(rows) != 1:
            continue
        reflections.append(i)
        raw = next(r for r in A.minus_identity() if any(not c.is_zero() for c in r))
        lead = next(c for c in raw if not c.is_zero())
        coeffs = [c / lead for c in raw]
        key = tuple((c.m, c.num, c.den) for c in coeffs)
        hp = planes.get(key)
        if hp is None:
            planes[key] = Hyperplane(Poly.linear(coeffs), 1, [i])
        else:
            hp.fixing_reflections.append(i)
    hyperplanes = list(planes.values())
    for hp in hyperplanes:
        hp.e = 1 + len(hp.fixing_reflections)
        orders = [
            _element_order(elements[i].trace() - (n - 1), order) for i in hp.fixing_reflections
        ]
        if max(orders) != hp.e:
            raise GroupError(f"reflections fixing {hp.L} do not form a cyclic group of order {hp.e}")

    delta = Poly.constant(n, 1)
    for hp in hyperplanes:
        delta = delta * hp.L ** (hp.e - 1)
    if not reflections:
        raise NotReflectionGroup(f"{name} contains no reflections")

    return ReflGroup(
        name=name,
        n=n,
        elements=elements,
        generators=gen_idx,
        reflections=reflections,
        hyperplanes=hyperplanes,
        delta=delta,
        conductor=m,
        irreducibility=cert,
    )
