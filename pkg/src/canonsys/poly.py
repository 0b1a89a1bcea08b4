"""Sparse multivariate polynomials over cyclotomic fields.

Besides ring arithmetic this module provides the star operator ``f* = conj(f)(d)``
(conjugate the coefficients of ``f`` and substitute partial derivatives for the
variables) and the unitary inner product ``<f, g> = (f* g)(0)``, under which distinct
monomials are orthogonal and ``<x^a, x^a> = a!``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .cyclo import CycloNum

__all__ = [
    "Poly",
    "DimensionMismatch",
    "monomials",
    "star_apply",
    "inner",
    "subst_linear",
    "jacobian",
    "evaluate",
    "partial",
    "Substitution",
]

ExpVec = tuple[int, ...]
Coeff = Union[CycloNum, int, Fraction]

_ZERO = CycloNum.from_rational(0)
_ONE = CycloNum.from_rational(1)


class DimensionMismatch(ValueError):
    pass


def _grlex_key(e: ExpVec) -> tuple[int, ExpVec]:
    return (sum(e), e)


def monomials(n: int, d: int) -> list[ExpVec]:
    """All exponent vectors of total degree d in n variables, graded-lex descending."""
    if n == 1:
        return [(d,)]
    out: list[ExpVec] = []
    for a in range(d, -1, -1):
        for rest in monomials(n - 1, d - a):
            out.append((a,) + rest)
    return out


def _factorial_of(e: ExpVec) -> int:
    f = 1
    for a in e:
        if a > 1:
            f *= math.factorial(a)
    return f


class Poly:
    """Polynomial in x_1..x_n with CycloNum coefficients; zero terms are never stored."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[ExpVec, Coeff] | None = None) -> None:
        if n < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[ExpVec, CycloNum] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != n or any(a < 0 for a in e):
                raise DimensionMismatch(f"exponent {e} does not fit {n} variables")
            c = CycloNum.coerce(c)
            if e in clean:
                c = clean[e] + c
            if c.is_zero():
                clean.pop(e, None)
            else:
                clean[e] = c
        self.n = n
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[ExpVec, CycloNum]) -> Poly:
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    # -- constructors -----------------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Poly:
        return cls(n)

    @classmethod
    def constant(cls, n: int, c: Coeff) -> Poly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> Poly:
        """The variable x_i, 1-based."""
        if not 1 <= i <= n:
            raise IndexError(f"variable index {i} out of range 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): _ONE})

    @classmethod
    def monomial(cls, e: Sequence[int], c: Coeff = 1) -> Poly:
        return cls(len(e), {tuple(e): c})

    @classmethod
    def linear(cls, coeffs: Sequence[Coeff]) -> Poly:
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(coeffs)})

    # -- queries ----------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[ExpVec, CycloNum]]:
        """Terms in graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common total degree of all terms; None if mixed or zero."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def leading(self) -> tuple[ExpVec, CycloNum]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coeff(self, e: Sequence[int]) -> CycloNum:
        return self.terms.get(tuple(e), _ZERO)

    def conductor(self) -> int:
        m = 1
        for c in self.terms.values():
            m = m * c.m // math.gcd(m, c.m)
        return m

    def monic(self) -> Poly:
        """Scaled so the graded-lex-first coefficient is 1."""
        _, c = self.leading()
        return self.scale(c.inv())

    def homogeneous_part(self, d: int) -> Poly:
        return Poly._raw(self.n, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- arithmetic -------------------------------------------------------------------

    def _check(self, other: Poly) -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n} variables")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (CycloNum, int, Fraction)):
            return Poly.constant(self.n, other)
        raise TypeError

    def __add__(self, other) -> Poly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def scale(self, c: Coeff) -> Poly:
        c = CycloNum.coerce(c)
        if c.is_zero():
            return Poly._raw(self.n, {})
        return Poly._raw(self.n, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> Poly:
        if isinstance(other, (CycloNum, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        acc: dict[ExpVec, CycloNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                acc[e] = acc[e] + p if e in acc else p
        return Poly._raw(self.n, {e: c for e, c in acc.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __truediv__(self, c: Coeff) -> Poly:
        return self.scale(CycloNum.coerce(c).inv())

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (CycloNum, int, Fraction)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def conj(self) -> Poly:
        """Complex-conjugate every coefficient."""
        return Poly._raw(self.n, {e: c.conj() for e, c in self.terms.items()})

    # -- calculus ---------------------------------------------------------------------

    def partial(self, j: int) -> Poly:
        """Formal partial derivative with respect to x_j (1-based)."""
        if not 1 <= j <= self.n:
            raise IndexError(f"variable index {j} out of range 1..{self.n}")
        k = j - 1
        out: dict[ExpVec, CycloNum] = {}
        for e, c in self.terms.items():
            a = e[k]
            if a:
                out[e[:k] + (a - 1,) + e[k + 1 :]] = c * a
        return Poly._raw(self.n, out)

    def gradient(self) -> list[Poly]:
        return [self.partial(j) for j in range(1, self.n + 1)]

    def star(self, g: Poly) -> Poly:
        return star_apply(self, g)

    def __repr__(self) -> str:
        return f"Poly({self.n}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = _var_names(self.n)
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            r = c.as_rational()
            if r is not None:
                cs = str(r)
                if not mono:
                    parts.append(cs)
                elif r == 1:
                    parts.append(mono)
                elif r == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")


def _var_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i}" for i in range(1, n + 1)]


def _pair_check(f: Poly, g: Poly) -> None:
    if f.n != g.n:
        raise DimensionMismatch(f"{f.n} vs {g.n} variables")


def partial(f: Poly, j: int) -> Poly:
    return f.partial(j)


def star_apply(f: Poly, g: Poly) -> Poly:
    """f* g: apply the constant-coefficient operator conj(f)(d_1, ..., d_n) to g."""
    _pair_check(f, g)
    acc: dict[ExpVec, CycloNum] = {}
    gterms = list(g.terms.items())
    for a, c in f.terms.items():
        cc = c.conj()
        for b, d in gterms:
            mult = 1
            for ai, bi in zip(a, b):
                if ai > bi:
                    break
                if ai:
                    mult *= math.perm(bi, ai)
            else:
                e = tuple(bi - ai for ai, bi in zip(a, b))
                p = cc * d * mult
                acc[e] = acc[e] + p if e in acc else p
    return Poly._raw(f.n, {e: v for e, v in acc.items() if not v.is_zero()})


def inner(f: Poly, g: Poly) -> CycloNum:
    """<f, g> = (f* g)(0), conjugate-linear in f."""
    _pair_check(f, g)
    if len(f.terms) > len(g.terms):
        small, big, flip = g.terms, f.terms, True
    else:
        small, big, flip = f.terms, g.terms, False
    total = _ZERO
    for e, c in small.items():
        d = big.get(e)
        if d is None:
            continue
        fc, gc = (d, c) if flip else (c, d)
        total = total + fc.conj() * gc * _factorial_of(e)
    return total


class Substitution:
    """Reusable linear change of variables x_i -> sum_j M[i][j] x_j.

    Powers of the image linear forms are memoized, so applying one substitution to
    many polynomials (the group action) costs mostly dictionary lookups.
    """

    __slots__ = ("n", "forms", "_powers", "_monomial_cache", "monomial_matrix")

    def __init__(self, M: Sequence[Sequence[Coeff]]) -> None:
        n = len(M)
        if n == 0 or any(len(row) != n for row in M):
            raise DimensionMismatch("substitution matrix must be square and non-empty")
        self.n = n
        self.forms = [Poly.linear(list(row)) for row in M]
        self._powers: list[list[Poly]] = [[Poly.constant(n, 1), f] for f in self.forms]
        self._monomial_cache: dict[ExpVec, Poly] = {}
        self.monomial_matrix = all(len(f.terms) <= 1 for f in self.forms)

    def _power(self, i: int, k: int) -> Poly:
        pw = self._powers[i]
        while len(pw) <= k:
            pw.append(pw[-1] * self.forms[i])
        return pw[k]

    def monomial(self, e: ExpVec) -> Poly:
        hit = self._monomial_cache.get(e)
        if hit is not None:
            return hit
        result = None
        for i, a in enumerate(e):
            if a:
                p = self._power(i, a)
                result = p if result is None else result * p
        if result is None:
            result = Poly.constant(self.n, 1)
        if len(self._monomial_cache) < 4096:
            self._monomial_cache[e] = result
        return result

    def __call__(self, f: Poly) -> Poly:
        if f.n != self.n:
            raise DimensionMismatch(f"{f.n} vs {self.n} variables")
        acc: dict[ExpVec, CycloNum] = {}
        for e, c in f.terms.items():
            for e2, c2 in self.monomial(e).terms.items():
                p = c * c2
                acc[e2] = acc[e2] + p if e2 in acc else p
        return Poly._raw(self.n, {e: v for e, v in acc.items() if not v.is_zero()})


def subst_linear(f: Poly, M: Sequence[Sequence[Coeff]]) -> Poly:
    """Replace each x_i by the linear form sum_j M[i][j] x_j."""
    if len(M) != f.n:
        raise DimensionMismatch(f"{len(M)}x{len(M)} matrix for {f.n} variables")
    return Substitution(M)(f)


def _det(entries: list[list[Poly]], n: int) -> Poly:
    total = Poly.zero(n)
    size = len(entries)
    for perm in itertools.permutations(range(size)):
        term = None
        for i, j in enumerate(perm):
            e = entries[i][j]
            if not e:
                term = None
                break
            term = e if term is None else term * e
        else:
            if term is None:
                continue
            inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
            total = total - term if inversions % 2 else total + term
    return total


def jacobian(fs: Sequence[Poly]) -> Poly:
    """det[d_j f_i]."""
    if not fs:
        raise DimensionMismatch("empty system")
    n = fs[0].n
    if len(fs) != n or any(f.n != n for f in fs):
        raise DimensionMismatch(f"jacobian needs exactly {n} polynomials in {n} variables")
    return _det([f.gradient() for f in fs], n)


def evaluate(f: Poly, point: Sequence[Coeff]) -> CycloNum:
    if len(point) != f.n:
        raise DimensionMismatch(f"point of length {len(point)} for {f.n} variables")
    if all(isinstance(p, (int, Fraction)) for p in point):
        total = _ZERO
        for e, c in f.terms.items():
            v = Fraction(1)
            for p, a in zip(point, e):
                if a:
                    v *= Fraction(p) ** a
            total = total + c * v
        return total
    pts = [CycloNum.coerce(p) for p in point]
    total = _ZERO
    for e, c in f.terms.items():
        v = c
        for p, a in zip(pts, e):
            if a:
                v = v * p**a
        total = total + v
    return total


def lincomb(polys: Iterable[Poly], coeffs: Iterable[Coeff], n: int) -> Poly:
    out = Poly.zero(n)
    for p, c in zip(polys, coeffs):
        out = out + p.scale(c)
    return out


def iter_vars(n: int) -> Iterator[Poly]:
    for i in range(1, n + 1):
        yield Poly.var(n, i)
