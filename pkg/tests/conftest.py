from __future__ import annotations

import random

import pytest

from lefcalc import symplectic as sp
from lefcalc.invariants import _nullspace_int
from lefcalc.words import Factorization, subword_product

E1, E2 = (1, 0), (0, 1)

# genus-2 chain c1..c5: consecutive classes pair to +-1, others to 0
CHAIN2 = [(1, 0, 0, 0), (0, 0, 1, 0), (-1, 1, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0)]


def chain(g: int) -> list[tuple[int, ...]]:
    """Classes of a standard chain of 2g+1 curves on a closed genus-g surface."""
    n = 2 * g

    def e(i):
        v = [0] * n
        v[i] = 1
        return v

    out = [tuple(e(0)), tuple(e(g))]
    for i in range(1, g):
        out.append(tuple(x - y for x, y in zip(e(i), e(i - 1))))
        out.append(tuple(e(g + i)))
    out.append(tuple(e(g - 1)))
    return out


def elliptic(k: int = 1) -> Factorization:
    return Factorization.from_classes(1, [E1, E2] * (6 * k))


def hyperelliptic(g: int) -> Factorization:
    c = chain(g)
    return Factorization.from_classes(g, (c + c[::-1]) * 2)


def random_class(rng: random.Random, g: int, bound: int = 2) -> tuple[int, ...]:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(2 * g))
        if any(v):
            return v


def random_word(rng: random.Random, g: int, length: int) -> Factorization:
    return Factorization.from_classes(g, [random_class(rng, g) for _ in range(length)])


def random_sp(rng: random.Random, g: int, steps: int = 4) -> sp.Matrix:
    m = sp.identity(2 * g)
    for _ in range(steps):
        a = random_class(rng, g, 1)
        m = sp.matmul(m, sp.transvection(a, rng.choice((1, -1))))
    return m


def fixed_class(rng: random.Random, f: Factorization, lo: int, hi: int):
    """A nonzero class fixed by the subword product, or None."""
    P = subword_product(f, lo, hi)
    n = f.dim
    rows = [[P[i][j] - (i == j) for j in range(n)] for i in range(n)]
    basis = _nullspace_int(rows, n)
    if not basis:
        return None
    for _ in range(10):
        v = [0] * n
        for b in basis:
            c = rng.randint(-1, 1)
            v = [x + c * y for x, y in zip(v, b)]
        if any(v):
            return tuple(v)
    return tuple(basis[0])


@pytest.fixture
def rng():
    return random.Random(20261016)
