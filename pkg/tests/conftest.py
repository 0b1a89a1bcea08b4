import random
from functools import lru_cache

import pytest

from canonsys.catalog import load_group
from canonsys.cyclo import CycloNum
from canonsys.poly import Poly, monomials

CATALOG = [
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:5",
    "cyclic:6",
    "B:2",
    "B:3",
    "G:2,1,2",
    "G:3,1,2",
    "G:4,1,2",
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "dihedral:7",
    "dihedral:8",
    "G:2,2,2",
    "G4",
]

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def group(spec: str):
    return load_group(spec)


@pytest.fixture
def get_group():
    return group


def random_cyclo(rng: random.Random, m: int, height: int = 3) -> CycloNum:
    from canonsys.cyclo import totient

    coeffs = [rng.randint(-height, height) for _ in range(totient(m))]
    if rng.random() < 0.3:
        coeffs = [c * rng.choice([1, 2, 3]) for c in coeffs]
        return CycloNum(m, coeffs) / rng.randint(1, 4)
    return CycloNum(m, coeffs)


def random_poly(rng: random.Random, n: int, m: int, max_deg: int = 3, terms: int = 3,
                homogeneous: int | None = None) -> Poly:
    out = {}
    for _ in range(terms):
        d = homogeneous if homogeneous is not None else rng.randint(0, max_deg)
        e = rng.choice(monomials(n, d))
        out[e] = random_cyclo(rng, m)
    return Poly(n, out)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
