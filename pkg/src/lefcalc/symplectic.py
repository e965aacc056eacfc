"""Integer symplectic matrices acting on first homology of a genus-g surface.

Coordinates are in the basis ``e_1..e_g, e_{g+1}..e_{2g}`` with
``<e_i, e_{g+i}> = +1``, so the pairing is ``x^T J y`` for
``J = [[0, I], [-I, 0]]``.  Matrices are tuples of row tuples of Python ints
and act on column vectors.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class SymplecticError(ValueError):
    pass


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """``x^T J y``."""
    n = len(x)
    if n != len(y) or n % 2:
        raise SymplecticError(f"pairing needs equal even lengths, got {len(x)} and {len(y)}")
    g = n // 2
    return sum(x[i] * y[g + i] - x[g + i] * y[i] for i in range(g))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def J(n: int) -> Matrix:
    g = n // 2
    rows = []
    for i in range(n):
        row = [0] * n
        if i < g:
            row[g + i] = 1
        else:
            row[i - g] = -1
        rows.append(tuple(row))
    return tuple(rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def apply(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def is_symplectic(m: Matrix) -> bool:
    n = len(m)
    if n % 2 or any(len(r) != n for r in m):
        return False
    return matmul(matmul(transpose(m), J(n)), m) == J(n)


def sp_inverse(m: Matrix) -> Matrix:
    """Inverse of a symplectic matrix, ``J^{-1} M^T J``."""
    n = len(m)
    j = J(n)
    minus_j = tuple(tuple(-x for x in r) for r in j)
    return matmul(matmul(minus_j, transpose(m)), j)


def transvection(a: Sequence[int], power: int = 1) -> Matrix:
    """Matrix of ``x -> x + power * <x, a> a``, the homology action of a twist.

    ``power`` gives integer powers directly since transvections along one
    class form a one-parameter group.  The zero class gives the identity.
    """
    a = tuple(a)
    n = len(a)
    if n % 2:
        raise SymplecticError(f"class length must be even, got {n}")
    g = n // 2
    # <x, a> = sum_i x_i * (J a)_i
    ja = [a[g + i] for i in range(g)] + [-a[i] for i in range(g)]
    return tuple(
        tuple((1 if i == j else 0) + power * a[i] * ja[j] for j in range(n)) for i in range(n)
    )


def act_transvection(a: Sequence[int], x: Sequence[int], power: int = 1) -> Vector:
    c = power * pairing(x, a)
    return tuple(xi + c * ai for xi, ai in zip(x, a))


def matpow(m: Matrix, k: int) -> Matrix:
    if k < 0:
        m, k = sp_inverse(m), -k
    out = identity(len(m))
    while k:
        if k & 1:
            out = matmul(out, m)
        m = matmul(m, m)
        k >>= 1
    return out


def sign_normalize(v: Sequence[int]) -> Vector:
    """Representative of ``{v, -v}`` whose first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                rows[r] = [p[col] * x - f * y for x, y in zip(rows[r], p)]
        rank += 1
        if rank == len(rows):
            break
    return rank
