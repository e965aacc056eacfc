"""Euler characteristic and signature of a factorization.

The signature uses Meyer's cocycle: for ``A, B`` in ``Sp(2g)``,
``tau(A, B)`` is the signature of the symmetrization of

    ((x1, y1), (x2, y2)) -> (x1 + y1)^T J (I - B) y2

on ``V = {(x, y) : (A^{-1} - I) x + (B - I) y = 0}``.  All of it is done over
``Fraction`` with an integer basis of ``V``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import symplectic as sp
from .symplectic import Matrix
from .words import Factorization, prefix_products, boundary_relation_check


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class SignatureTriple:
    positive: int
    negative: int
    nullity: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


def form_signature(S: Sequence[Sequence]) -> SignatureTriple:
    """Inertia of a symmetric rational matrix by congruence diagonalization.

    Pivots on a nonzero diagonal entry when one exists; otherwise splits off
    a 2x2 block ``[[0, b], [b, 0]]``, which is hyperbolic and contributes one
    positive and one negative square.
    """
    n = len(S)
    M = [[Fraction(x) for x in row] for row in S]
    if any(len(r) != n for r in M):
        raise FormError("matrix must be square")
    for i in range(n):
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise FormError(f"matrix is not symmetric at ({i}, {j})")
    pos = neg = 0
    idx = list(range(n))
    while idx:
        p = next((i for i in idx if M[i][i] != 0), None)
        if p is not None:
            d = M[p][p]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(p)
            rowp = M[p]
            for i in idx:
                f = rowp[i] / d
                if f:
                    Mi = M[i]
                    for j in idx:
                        Mi[j] -= f * rowp[j]
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and M[i][j] != 0), None)
        if pair is None:
            break
        i0, j0 = pair
        b = M[i0][j0]
        pos += 1
        neg += 1
        idx.remove(i0)
        idx.remove(j0)
        # Schur complement of [[0, b], [b, 0]]; its inverse is [[0, 1/b], [1/b, 0]].
        ri, rj = M[i0], M[j0]
        for i in idx:
            ci, cj = ri[i], rj[i]
            if not (ci or cj):
                continue
            Mi = M[i]
            for j in idx:
                Mi[j] -= (ci * rj[j] + cj * ri[j]) / b
    return SignatureTriple(pos, neg, n - pos - neg)


def _nullspace_int(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Integer basis (primitive vectors) of the rational kernel of ``rows``."""
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -A[row][fc]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        w = [int(x * den) for x in v]
        g = 0
        for x in w:
            g = gcd(g, x)
        basis.append([x // g for x in w])
    return basis


def _check_sp(m: Matrix) -> None:
    if not sp.is_symplectic(m):
        raise FormError("Meyer cocycle needs symplectic matrices")


@lru_cache(maxsize=200_000)
def _meyer(A: Matrix, B: Matrix) -> int:
    n = len(A)
    Ainv = sp.sp_inverse(A)
    rows = [
        [Ainv[i][j] - (i == j) for j in range(n)] + [B[i][j] - (i == j) for j in range(n)]
        for i in range(n)
    ]
    basis = _nullspace_int(rows, 2 * n)
    if not basis:
        return 0
    j = sp.J(n)
    # K = J (I - B); form(v, w) = (x1 + y1)^T K y2
    I_minus_B = tuple(tuple((i == k) - B[i][k] for k in range(n)) for i in range(n))
    K = sp.matmul(j, I_minus_B)
    us = [[v[i] + v[n + i] for i in range(n)] for v in basis]
    ky = [sp.apply(K, v[n:]) for v in basis]
    m = len(basis)
    G = [[sum(a * b for a, b in zip(us[p], ky[q])) for q in range(m)] for p in range(m)]
    sym = [[G[p][q] + G[q][p] for q in range(m)] for p in range(m)]
    return form_signature(sym).signature


def meyer_cocycle(A: Matrix, B: Matrix) -> int:
    A = tuple(tuple(r) for r in A)
    B = tuple(tuple(r) for r in B)
    if len(A) != len(B):
        raise FormError("matrices must have matching size")
    _check_sp(A)
    _check_sp(B)
    return _meyer(A, B)


def euler_characteristic(f: Factorization, as_pencil: bool = False) -> int:
    """``2(2 - 2g) + r``, less the base points in pencil mode."""
    e = 2 * (2 - 2 * f.genus) + len(f)
    if as_pencil:
        e -= f.boundary_count
    return e


@dataclass(frozen=True)
class SignatureResult:
    value: int
    closed: bool

    def __int__(self) -> int:
        return self.value


def signature_details(f: Factorization, as_pencil: bool = False) -> SignatureResult:
    """Signature together with whether the word's product is trivial.

    ``closed`` is False when the product is not the identity, in which case
    the number is only the Meyer sum of an open word.
    """
    prefixes = prefix_products(f)
    total = 0
    for j in range(1, len(f)):
        letter = f.letters[j]
        if letter.separating:
            continue
        total += _meyer(prefixes[j], sp.transvection(letter.cls))
    # Sign fixed by the rational elliptic surface, (t_a t_b)^6 -> -8, under the
    # transvection convention x -> x + <x, a> a.  A separating singular fiber
    # carries one extra negative square.
    sigma = total - sum(1 for l in f.letters if l.separating)
    if as_pencil:
        sigma += f.boundary_count
    return SignatureResult(sigma, boundary_relation_check(f))


def signature(f: Factorization, as_pencil: bool = False) -> int:
    return signature_details(f, as_pencil).value
