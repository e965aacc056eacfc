"""Bounded breadth-first exploration of Hurwitz orbits at homology level."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Sequence

from . import symplectic as sp
from .invariants import euler_characteristic, signature
from .words import (
    Factorization,
    Stabilizer,
    hurwitz_move,
    monodromy_fingerprint,
    partial_conjugate,
    stabilizer_type,
    word_product,
)

CAVEATS = (
    "bounded search: absence from the explored orbit is not evidence of inequivalence",
    "homology-level: a 'yes' is necessary, not sufficient, for mapping-class equivalence",
)


@dataclass
class OrbitReport:
    seed: Factorization
    visited: int
    truncated: bool
    representatives: list[tuple]
    moves: tuple[str, ...]
    depth_reached: int = 0

    def __contains__(self, f: Factorization) -> bool:
        return f.canonical_key() in self._keys

    def __post_init__(self):
        self._keys = set(self.representatives)


def _neighbors(
    f: Factorization, conjugators: Sequence[Sequence[int]], qs: Sequence[int]
) -> Iterator[Factorization]:
    for i in range(1, len(f)):
        yield hurwitz_move(f, i, "right")
        yield hurwitz_move(f, i, "left")
    if not conjugators:
        return
    n = len(f)
    for alpha in conjugators:
        for lo in range(1, n + 1):
            for hi in range(lo, n + 1):
                if stabilizer_type(f, lo, hi, alpha) is not Stabilizer.FIXES:
                    continue
                for q in qs:
                    yield partial_conjugate(f, lo, hi, alpha, q)


def hurwitz_orbit(
    f: Factorization,
    depth_cap: int,
    size_cap: int,
    conjugators: Optional[Sequence[Sequence[int]]] = None,
    max_q: int = 1,
) -> OrbitReport:
    """Orbit of ``f`` under Hurwitz moves and, optionally, untwisted partial conjugations.

    Words are deduplicated by :meth:`Factorization.canonical_key`.  The walk
    is breadth first with neighbours generated in a fixed order, so the
    report depends only on the inputs.
    """
    if depth_cap < 1 or size_cap < 1:
        raise ValueError("caps must be >= 1")
    conjugators = [tuple(a) for a in (conjugators or ()) if any(a)]
    qs = [q for k in range(1, max_q + 1) for q in (k, -k)]
    moves = ["hurwitz"] + (["partial-conjugation"] if conjugators else [])
    seen = {f.canonical_key()}
    order = [f.canonical_key()]
    frontier = [f]
    truncated = False
    depth = 0
    while frontier and not truncated:
        if depth >= depth_cap:
            # anything unexplored beyond the depth cap?
            truncated = any(
                g.canonical_key() not in seen for w in frontier for g in _neighbors(w, conjugators, qs)
            )
            break
        nxt = []
        for w in frontier:
            for g in _neighbors(w, conjugators, qs):
                key = g.canonical_key()
                if key in seen:
                    continue
                if len(seen) >= size_cap:
                    truncated = True
                    break
                seen.add(key)
                order.append(key)
                nxt.append(g)
            if truncated:
                break
        frontier = nxt
        depth += 1
    return OrbitReport(f, len(seen), truncated, sorted(order), tuple(moves), depth)


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class EquivalenceResult:
    verdict: Verdict
    reason: str
    screens: dict = field(default_factory=dict)
    caveats: tuple[str, ...] = CAVEATS


def screens(f1: Factorization, f2: Factorization, use_rank: bool = True) -> dict:
    """Invariants that must agree for the two words to be equivalent."""
    out = {}
    out["genus"] = (f1.genus, f2.genus)
    if f1.genus != f2.genus:
        return out
    out["length"] = (len(f1), len(f2))
    out["product"] = (word_product(f1) == word_product(f2),)
    out["euler"] = (euler_characteristic(f1), euler_characteristic(f2))
    out["signature"] = (signature(f1), signature(f2))
    if use_rank:
        out["rank"] = (monodromy_fingerprint(f1, 1).rank, monodromy_fingerprint(f2, 1).rank)
    return out


def equivalent(
    f1: Factorization,
    f2: Factorization,
    depth_cap: int = 4,
    size_cap: int = 10_000,
    conjugators: Optional[Sequence[Sequence[int]]] = None,
    max_q: int = 1,
) -> EquivalenceResult:
    """Three-valued equivalence test under Hurwitz moves (and partial conjugations).

    ``no`` only comes from a differing invariant; a bounded search that does
    not meet ``f2`` yields ``unknown``.  The span rank is only a screen for
    pure Hurwitz equivalence, since a partial conjugation by a class outside
    the span can enlarge it.
    """
    if f1.canonical_key() == f2.canonical_key():
        return EquivalenceResult(Verdict.YES, "identical words")
    sc = screens(f1, f2, use_rank=not conjugators)
    for name, vals in sc.items():
        differs = (not vals[0]) if name == "product" else vals[0] != vals[1]
        if differs:
            return EquivalenceResult(Verdict.NO, f"{name} differs", sc)
    orbit = hurwitz_orbit(f1, depth_cap, size_cap, conjugators, max_q)
    if f2 in orbit:
        return EquivalenceResult(Verdict.YES, f"found within depth {orbit.depth_reached}", sc)
    why = "caps reached" if orbit.truncated else "orbit closed without a match"
    return EquivalenceResult(Verdict.UNKNOWN, why, sc)
