from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from toric_kring import corpus
from toric_kring.charpair import CharPair
from toric_kring.fan import Fan, to_char_pair
from toric_kring.lattice import determinant

POSITIVE = [e for e in corpus.MANIFEST if e.positive]
NEGATIVE = [e for e in corpus.MANIFEST if not e.positive]


def as_char_pair(entry):
    obj = entry.build()
    return to_char_pair(obj) if isinstance(obj, Fan) else obj


@pytest.fixture(params=POSITIVE, ids=lambda e: e.name)
def positive_entry(request):
    return request.param


@pytest.fixture
def p1():
    return to_char_pair(corpus.projective_space(1))


@pytest.fixture
def p2():
    return to_char_pair(corpus.projective_space(2))


@pytest.fixture
def square():
    return corpus.square_quasitoric()


# --- independent oracles -------------------------------------------------


def determinantal_factors(rows):
    """Invariant factors from gcds of k x k minors (brute force, tiny matrices only)."""
    if not rows or not rows[0]:
        return []
    nr, nc = len(rows), len(rows[0])
    divisors = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                g = gcd(g, determinant([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def rank_mod(rows, p=None):
    """Rank over Q (p=None) or over GF(p) by plain Gaussian elimination."""
    if p is None:
        a = [[Fraction(x) for x in r] for r in rows]
    else:
        a = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        if p is None:
            inv = 1 / a[rank][c]
        else:
            inv = pow(a[rank][c], -1, p)
        a[rank] = [(x * inv) if p is None else (x * inv) % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c]
                if p is None:
                    a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
                else:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


# --- acceptance summary ----------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
