"""Search for doubling sequences that land on the same blow-up with the same genus.

Two sequences of equal length ``d`` from the same start pencil give the same
blow-up count and genus exactly when their difference lies in the lattice

    {v in Z^d : sum(v) = 0 and sum(2**(d-i) v_i) = 0}.

The search first walks these lattice cosets (translates of a seed sequence),
seeding with the full-doubling sequence ``[m0, ..., m0]``, and only then falls
back to an exhaustive enumeration of all lengths bucketed by ``(M, g)``.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exceptional import (
    CalculusError,
    DoublingSequence,
    ExceptionalData,
    PencilState,
    adjunction_check,
    apply_sequence,
    closed_forms,
    normalize,
    validate_sequence,
)

log = logging.getLogger(__name__)


def kernel_basis(d: int) -> list[tuple[int, ...]]:
    """Z-basis of the matching lattice in dimension ``d``.

    The vectors ``e_j - 3 e_{j+1} + 2 e_{j+2}`` for ``j = 1..d-2`` are
    unitriangular in their leading coordinate, so clearing coordinates
    ``1..d-2`` of any lattice vector reduces it to a vector supported on the
    last two places, which the two conditions force to zero.
    """
    if d < 2:
        raise CalculusError(f"kernel basis needs d >= 2, got {d}")
    basis = []
    for j in range(d - 2):
        v = [0] * d
        v[j], v[j + 1], v[j + 2] = 1, -3, 2
        basis.append(tuple(v))
    return basis


def matching_matrix(d: int) -> list[list[int]]:
    return [[1] * d, [1 << (d - i) for i in range(1, d + 1)]]


def paper_family_violations(m0: int, n: int) -> list[str]:
    out = []
    if n < 0:
        out.append(f"n = {n} must be non-negative")
    if Fraction(m0) < Fraction(7 * n, 3):
        out.append(f"m0 >= 7n/3 fails: {m0} < {Fraction(7 * n, 3)}")
    if m0 < 1 + 2 * n:
        out.append(f"m0 >= 1 + 2n fails: {m0} < {1 + 2 * n}")
    return out


def paper_family(m0: int, n: int) -> DoublingSequence:
    """The length-3 family ``[m0 - n, m0 + 3n, m0 - 2n]``."""
    bad = paper_family_violations(m0, n)
    if bad:
        raise CalculusError("; ".join(bad))
    return DoublingSequence((m0 - n, m0 + 3 * n, m0 - 2 * n))


def family_final_data(m0: int, n: int) -> ExceptionalData:
    bad = paper_family_violations(m0, n)
    if bad:
        raise CalculusError("; ".join(bad))
    return ExceptionalData((4 * m0 - 8 * n, 0, 3 * m0 + 14 * n, 3 * m0 - 7 * n, n))


def valid_family_range(m0: int) -> range:
    """All ``n`` accepted by :func:`paper_family` for this ``m0``."""
    if m0 < 1:
        return range(0)
    return range(min(3 * m0 // 7, (m0 - 1) // 2) + 1)


@dataclass
class MatchingFamily:
    start: tuple[int, int]
    sequences: list[DoublingSequence]
    shared: tuple[int, int]
    datasets: list[ExceptionalData]
    requested: int = 1
    complete: bool = True
    bounds: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.sequences)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _strict_ok(genus: int, k: int) -> bool:
    return genus >= 2 and k <= 2 * genus - 2


def enumerate_sequences(
    g0: int, m0: int, d: int, k_bound: int, strict: bool = True, first: int | None = None
) -> Iterator[tuple[int, ...]]:
    """All valid length-``d`` sequences in lexicographic order.

    ``first`` pins ``k_1`` (used to split the box for parallel workers).
    """
    if d == 0:
        yield ()
        return
    out = [0] * d

    def rec(pos: int, prev: int, genus: int):
        hi = min(k_bound, m0 if pos == 0 else 4 * prev)
        lo = 1
        if pos == 0 and first is not None:
            lo, hi = first, min(hi, first)
        for k in range(lo, hi + 1):
            if strict and not _strict_ok(genus, k):
                break
            out[pos] = k
            if pos + 1 == d:
                yield tuple(out)
            else:
                yield from rec(pos + 1, k, 2 * genus + k - 1)

    yield from rec(0, 0, g0)


def _fiber(
    g0: int, m0: int, d: int, k_bound: int, total: int, weighted: int, strict: bool
) -> list[tuple[int, ...]]:
    """Every valid length-``d`` sequence with the given sum and weighted sum."""
    weights = [1 << (d - i) for i in range(1, d + 1)]
    # suffix sums of weights for pruning
    wsuf = [0] * (d + 1)
    for i in range(d - 1, -1, -1):
        wsuf[i] = wsuf[i + 1] + weights[i]
    found = []
    out = [0] * d

    def rec(pos: int, prev: int, genus: int, s: int, t: int):
        if pos == d:
            if s == 0 and t == 0:
                found.append(tuple(out))
            return
        rest = d - pos - 1
        hi = min(k_bound, m0 if pos == 0 else 4 * prev, s - rest)
        w = weights[pos]
        for k in range(1, hi + 1):
            s2, t2 = s - k, t - w * k
            if strict and not _strict_ok(genus, k):
                break
            if t2 < wsuf[pos + 1]:
                break
            if s2 > rest * k_bound or t2 > k_bound * wsuf[pos + 1]:
                continue
            out[pos] = k
            rec(pos + 1, k, 2 * genus + k - 1, s2, t2)

    rec(0, 0, g0, total, weighted)
    return found


def _distinct_by_data(g0: int, m0: int, seqs, strict: bool):
    """Keep the lexicographically first sequence per normalized final data."""
    seen = {}
    start = PencilState.of(g0, (m0,))
    for s in sorted(seqs):
        key = normalize(apply_sequence(start, s, strict=strict).final.data)
        seen.setdefault(key, s)
    pairs = sorted(seen.items(), key=lambda kv: kv[1])
    return [DoublingSequence(s) for _, s in pairs]


def _make_family(g0, m0, seqs, N, complete, bounds, strict) -> MatchingFamily:
    start = PencilState.of(g0, (m0,))
    datasets = [apply_sequence(start, s, strict=strict).final.data for s in seqs]
    shared = closed_forms(g0, m0, seqs[0]) if seqs else (m0, g0)
    return MatchingFamily((g0, m0), list(seqs), shared, datasets, N, complete, bounds)


def bucket_by_invariants(args):
    """Valid sequences of lengths ``1..max_d`` grouped by ``(M, g)``.

    ``args`` is one tuple ``(g0, m0, max_d, k_bound, strict, first_k)`` so the
    function can be mapped over sub-boxes by a process pool.
    """
    g0, m0, max_d, k_bound, strict, first = args
    buckets = defaultdict(list)
    for d in range(1, max_d + 1):
        for s in enumerate_sequences(g0, m0, d, k_bound, strict, first=first):
            buckets[closed_forms(g0, m0, s)].append(s)
    return dict(buckets)


def search_matching(
    g0: int,
    m0: int,
    N: int,
    max_d: int,
    k_bound: int,
    strict: bool = True,
    jobs: int = 1,
) -> MatchingFamily:
    """Find at least ``N`` sequences with equal ``(M, g)`` and distinct normalized data.

    Returns a family flagged ``complete=False`` holding the best bucket seen
    when the bounded box does not contain ``N`` such sequences.
    """
    if N < 1 or max_d < 0 or k_bound < 1:
        raise CalculusError("search bounds must be positive")
    start = PencilState.of(g0, (m0,))
    if strict:
        adj = adjunction_check(start)
        if not adj or g0 < 2:
            raise CalculusError(
                "strict search needs an adjunction-clean start with g0 >= 2: "
                + "; ".join(adj.reasons or (f"genus {g0} < 2",))
            )
    bounds = {"max_d": max_d, "k_bound": k_bound}
    best: list = []

    # lattice translates, one length at a time
    for d in range(0, max_d + 1):
        weights = [1 << (d - i) for i in range(1, d + 1)]
        seen_keys = set()
        full = tuple([m0] * d)
        seeds = [full] if d and validate_sequence(m0, full) and m0 <= k_bound else []

        def candidates():
            yield from seeds
            yield from enumerate_sequences(g0, m0, d, k_bound, strict)

        for seed in candidates():
            key = (sum(seed), sum(w * k for w, k in zip(weights, seed)))
            if key in seen_keys:
                continue
            seen_keys.add(key)
            fiber = _fiber(g0, m0, d, k_bound, key[0], key[1], strict)
            if not fiber:
                continue
            distinct = _distinct_by_data(g0, m0, fiber, strict)
            if len(distinct) > len(best):
                best = distinct
            if len(distinct) >= N:
                log.info("lattice coset of %s gives %d sequences", seed, len(distinct))
                return _make_family(g0, m0, distinct, N, True, bounds, strict)

    # every length at once, bucketed by (M, g)
    if jobs > 1 and max_d >= 1:
        tasks = [(g0, m0, max_d, k_bound, strict, k1) for k1 in range(1, min(m0, k_bound) + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(bucket_by_invariants, tasks))
    else:
        parts = [bucket_by_invariants((g0, m0, max_d, k_bound, strict, None))]
    buckets = defaultdict(list)
    buckets[(m0, g0)].append(())
    for part in parts:
        for key, seqs in part.items():
            buckets[key].extend(seqs)
    for key in sorted(buckets):
        distinct = _distinct_by_data(g0, m0, buckets[key], strict)
        if len(distinct) > len(best):
            best = distinct
    if len(best) >= N:
        return _make_family(g0, m0, best, N, True, bounds, strict)
    log.warning("only %d of %d matching sequences within bounds", len(best), N)
    return _make_family(g0, m0, best, N, False, bounds, strict)


def verify_family(family: MatchingFamily, strict: bool = True) -> VerificationReport:
    """Re-derive every claim of a family by stepwise simulation."""
    g0, m0 = family.start
    start = PencilState.of(g0, (m0,))
    checks = []
    results = []
    for idx, seq in enumerate(family.sequences):
        try:
            out = apply_sequence(start, seq, strict=strict)
        except CalculusError as exc:
            checks.append(Check(f"valid[{idx}]", False, f"{seq}: {exc}"))
            results.append(None)
            continue
        checks.append(Check(f"valid[{idx}]", True, str(seq)))
        results.append(out)

    for idx, out in enumerate(results):
        if out is None:
            continue
        M, g = out.blowup_count, out.final.genus
        checks.append(Check(
            f"blowups[{idx}]", M == family.shared[0], f"M = {M}, shared {family.shared[0]}"
        ))
        checks.append(Check(
            f"genus[{idx}]", g == family.shared[1], f"g = {g}, shared {family.shared[1]}"
        ))
        if idx < len(family.datasets):
            same = out.final.data == family.datasets[idx]
            checks.append(Check(f"data[{idx}]", same, f"simulated {out.final.data}"))

    norms = {}
    clashes = []
    for idx, out in enumerate(results):
        if out is None:
            continue
        key = normalize(out.final.data)
        if key in norms:
            clashes.append(f"{norms[key]} and {idx} share {key}")
        else:
            norms[key] = idx
    checks.append(Check("distinct", not clashes, "; ".join(clashes)))
    checks.append(Check(
        "count", len(family.sequences) >= family.requested,
        f"{len(family.sequences)} of {family.requested} requested",
    ))
    return VerificationReport(checks)
