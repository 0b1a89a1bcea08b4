"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored in the power basis 1, z, ..., z^(phi(m)-1) of Q(z), z = exp(2 pi i / m),
reduced modulo the m-th cyclotomic polynomial.  Internally the coefficients are kept as
an integer tuple over one positive common denominator, which keeps the hot paths in
plain ``int`` arithmetic.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "CycloNum",
    "ConductorCapError",
    "cyclotomic_poly",
    "totient",
    "get_conductor_cap",
    "set_conductor_cap",
    "zeta",
    "conj",
    "is_real",
    "as_rational",
    "common_conductor",
]

Scalar = Union["CycloNum", int, Fraction]

_CONDUCTOR_CAP = 120


class ConductorCapError(ValueError):
    """Raised when an operation would need a conductor above the configured cap."""


def get_conductor_cap() -> int:
    return _CONDUCTOR_CAP


def set_conductor_cap(cap: int) -> int:
    """Set the largest admissible conductor; returns the previous value."""
    global _CONDUCTOR_CAP
    if cap < 1:
        raise ValueError("conductor cap must be positive")
    old, _CONDUCTOR_CAP = _CONDUCTOR_CAP, int(cap)
    return old


def _check_cap(m: int) -> None:
    if m > _CONDUCTOR_CAP:
        raise ConductorCapError(
            f"conductor {m} exceeds the cap {_CONDUCTOR_CAP}; raise it with set_conductor_cap()"
        )


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; coefficients low-degree first
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p = _poly_divexact(p, cyclotomic_poly(d))
    return tuple(p)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds zeta_m^e (0 <= e < m) in the power basis."""
    phi = totient(m)
    cyc = cyclotomic_poly(m)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by zeta and fold the overflow coefficient back with Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cyc[j]
    return tuple(rows)


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num, den = [-a for a in num], -den
    g = math.gcd(den, *num)
    if g != 1:
        return tuple(a // g for a in num), den // g
    return tuple(num), den


def _reduce_exponents(m: int, coeffs: dict[int, int]) -> list[int]:
    """Fold an exponent -> integer-coefficient map into the power basis."""
    phi = totient(m)
    table = _power_table(m)
    out = [0] * phi
    for e, c in coeffs.items():
        if not c:
            continue
        e %= m
        if e < phi:
            out[e] += c
        else:
            for j, t in enumerate(table[e]):
                if t:
                    out[j] += c * t
    return out


class CycloNum:
    """An element of Q(zeta_m).  Immutable."""

    __slots__ = ("m", "num", "den", "_hash")

    def __init__(self, m: int, coeffs: Iterable[Union[int, Fraction, str]] = ()) -> None:
        # coeffs[k] multiplies zeta_m^k; any length, reduced on construction
        if m < 1:
            raise ValueError("conductor must be positive")
        _check_cap(m)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {k: int(c * den) for k, c in enumerate(fr)}
        num, den = _normalize(_reduce_exponents(m, ints), den)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, m: int, num: tuple[int, ...], den: int) -> CycloNum:
        self = object.__new__(cls)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    # -- constructors -----------------------------------------------------------------

    @classmethod
    def from_rational(cls, r: Union[int, Fraction], m: int = 1) -> CycloNum:
        r = Fraction(r)
        _check_cap(m)
        num = [0] * totient(m)
        num[0] = r.numerator
        return cls._raw(m, tuple(num), r.denominator)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycloNum:
        """zeta_m ** k."""
        _check_cap(m)
        return cls._raw(m, _power_table(m)[k % m], 1)

    @classmethod
    def from_exponents(cls, m: int, terms: dict[int, Union[int, Fraction]]) -> CycloNum:
        """Sum of r * zeta_m^k over the given exponent map."""
        _check_cap(m)
        fr = {k: Fraction(v) for k, v in terms.items()}
        den = 1
        for c in fr.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {k: int(c * den) for k, c in fr.items()}
        num, den = _normalize(_reduce_exponents(m, ints), den)
        return cls._raw(m, num, den)

    @staticmethod
    def coerce(x: Scalar) -> CycloNum:
        if isinstance(x, CycloNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycloNum.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloNum")

    # -- structure --------------------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self.m

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def promote(self, M: int) -> CycloNum:
        """The same value written in Q(zeta_M); M must be a multiple of the conductor."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"cannot promote conductor {self.m} to {M}")
        _check_cap(M)
        step = M // self.m
        num = _reduce_exponents(M, {k * step: a for k, a in enumerate(self.num) if a})
        return CycloNum._raw(M, tuple(num), self.den)

    def demote(self) -> CycloNum:
        """Rewrite in the smallest conductor whose field contains this value."""
        for d in range(1, self.m + 1):
            if self.m % d or (d % 4 == 2):
                continue
            hit = _express_in(self, d)
            if hit is not None:
                return hit
        return self

    # -- arithmetic -------------------------------------------------------------------

    def _pair(self, other: Scalar) -> tuple[CycloNum, CycloNum]:
        if not isinstance(other, CycloNum):
            other = CycloNum.coerce(other)
        if self.m == other.m:
            return self, other
        M = self.m * other.m // math.gcd(self.m, other.m)
        return self.promote(M), other.promote(M)

    def __add__(self, other: Scalar) -> CycloNum:
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            num = [x + y for x, y in zip(a.num, b.num)]
            den = a.den
        else:
            num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
            den = a.den * b.den
        return CycloNum._raw(a.m, *_normalize(num, den))

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum._raw(self.m, tuple(-a for a in self.num), self.den)

    def __sub__(self, other: Scalar) -> CycloNum:
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other: Scalar) -> CycloNum:
        return (-self) + other

    def __mul__(self, other: Scalar) -> CycloNum:
        if isinstance(other, int):
            if other == 0:
                return CycloNum._raw(self.m, (0,) * len(self.num), 1)
            return CycloNum._raw(self.m, *_normalize([a * other for a in self.num], self.den))
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        phi = len(a.num)
        if phi == 1:
            return CycloNum._raw(a.m, *_normalize([a.num[0] * b.num[0]], a.den * b.den))
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        table = _power_table(a.m)
        for e in range(phi, 2 * phi - 1):
            c = conv[e]
            if c:
                for j, t in enumerate(table[e % a.m]):
                    if t:
                        out[j] += c * t
        return CycloNum._raw(a.m, *_normalize(out, a.den * b.den))

    __rmul__ = __mul__

    def inv(self) -> CycloNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if len(self.num) == 1:
            return CycloNum._raw(self.m, *_normalize([self.den], self.num[0]))
        # solve (multiplication-by-self matrix) x = e_0 over Q
        phi = len(self.num)
        cols = [self * CycloNum.zeta(self.m, k) for k in range(phi)]
        rows = [[Fraction(c.num[i], c.den) for c in cols] for i in range(phi)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(phi)]
        x = _solve_rational(rows, rhs)
        if x is None:  # pragma: no cover - a field element is invertible
            raise ArithmeticError("singular multiplication matrix")
        return CycloNum(self.m, x)

    def __truediv__(self, other: Scalar) -> CycloNum:
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycloNum._raw(self.m, *_normalize(self.num, self.den * other))
        try:
            other = CycloNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Scalar) -> CycloNum:
        return CycloNum.coerce(other) * self.inv()

    def __pow__(self, k: int) -> CycloNum:
        if k < 0:
            return self.inv() ** (-k)
        result = CycloNum.from_rational(1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> CycloNum:
        """Complex conjugate, i.e. the automorphism zeta -> zeta^(m-1)."""
        if len(self.num) == 1:
            return self
        m = self.m
        num = _reduce_exponents(m, {(-k) % m: a for k, a in enumerate(self.num) if a})
        return CycloNum._raw(m, tuple(num), self.den)

    def galois(self, a: int) -> CycloNum:
        """Image under zeta -> zeta^a (gcd(a, m) = 1)."""
        if math.gcd(a, self.m) != 1:
            raise ValueError("exponent must be a unit modulo the conductor")
        num = _reduce_exponents(self.m, {(k * a) % self.m: c for k, c in enumerate(self.num) if c})
        return CycloNum._raw(self.m, tuple(num), self.den)

    def is_real(self) -> bool:
        return self == self.conj()

    def as_rational(self) -> Fraction | None:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def abs2(self) -> CycloNum:
        return self * self.conj()

    # -- comparison / hashing ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            r = self.as_rational()
            return r is not None and r == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        if self.m == other.m:
            return self.den == other.den and self.num == other.num
        a, b = self._pair(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            r = self.as_rational()
            if r is not None:
                h = hash(r)
            else:
                d = self.demote()
                h = hash((d.m, d.num, d.den))
            object.__setattr__(self, "_hash", h)
        return h

    # -- display ----------------------------------------------------------------------

    def to_complex(self) -> complex:
        """Floating-point value under zeta_m = exp(2 pi i/m).  Debug output only."""
        z = cmath.exp(2j * math.pi / self.m)
        return sum(a * z**k for k, a in enumerate(self.num)) / self.den

    def to_literal(self) -> str:
        parts = [f"{k}:{Fraction(a, self.den)}" for k, a in enumerate(self.num) if a]
        return f"{self.m}; " + ", ".join(parts) if parts else f"{self.m};"

    @classmethod
    def from_literal(cls, text: str) -> CycloNum:
        """Parse ``m; k1:r1, k2:r2, ...`` (sum of r_j zeta_m^k_j)."""
        head, sep, body = text.partition(";")
        if not sep:
            raise ValueError(f"malformed cyclotomic literal {text!r}")
        try:
            m = int(head.strip())
            terms: dict[int, Fraction] = {}
            for item in body.split(","):
                item = item.strip()
                if not item:
                    continue
                k, colon, r = item.partition(":")
                if not colon:
                    raise ValueError
                k = int(k)
                terms[k] = terms.get(k, Fraction(0)) + Fraction(r.strip())
        except ValueError:
            raise ValueError(f"malformed cyclotomic literal {text!r}") from None
        return cls.from_exponents(m, terms)

    def __repr__(self) -> str:
        return f"CycloNum({self.to_literal()!r})"

    def __str__(self) -> str:
        r = self.as_rational()
        if r is not None:
            return str(r)
        parts = []
        for k, a in enumerate(self.num):
            if not a:
                continue
            c = Fraction(a, self.den)
            mono = "" if k == 0 else (f"z{self.m}" if k == 1 else f"z{self.m}^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a consistent (possibly overdetermined) rational system; None if inconsistent."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols: list[int] = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(nr):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    if any(aug[i][nc] for i in range(r, nr)):
        return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][nc]
    return x


def _express_in(a: CycloNum, d: int) -> CycloNum | None:
    step = a.m // d
    phi_d = totient(d)
    basis = [CycloNum.zeta(a.m, k * step) for k in range(phi_d)]
    rows = [[Fraction(b.num[i], b.den) for b in basis] for i in range(len(a.num))]
    x = _solve_rational(rows, [Fraction(v, a.den) for v in a.num])
    if x is None:
        return None
    return CycloNum(d, x)


def common_conductor(values: Iterable[CycloNum]) -> int:
    m = 1
    for v in values:
        m = m * v.m // math.gcd(m, v.m)
    _check_cap(m)
    return m


def zeta(m: int, k: int = 1) -> CycloNum:
    return CycloNum.zeta(m, k)


def conj(a: Scalar) -> CycloNum:
    return CycloNum.coerce(a).conj()


def is_real(a: Scalar) -> bool:
    return CycloNum.coerce(a).is_real()


def as_rational(a: Scalar) -> Fraction | None:
    return CycloNum.coerce(a).as_rational()
