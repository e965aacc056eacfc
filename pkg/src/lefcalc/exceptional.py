"""Exceptional-data calculus for partial doublings of Lefschetz pencils.

A pencil is tracked only through its fiber genus and its exceptional data
``(m_0, m_1, ..., m_r)``: ``m_0`` counts base points and ``m_{i+1}`` counts
exceptional ``2**i``-sections.  Everything here is pure integer bookkeeping;
Python ints are unbounded, so genus and entry growth under long doubling
sequences is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class CalculusError(ValueError):
    """A precondition of a calculus operation was violated."""

    tag = "domain"


class DoublingHypothesisError(CalculusError):
    """Strict mode: the doubling needs ``g >= 2`` and ``k <= 2g - 2``."""

    tag = "doubling-hypothesis"


class SequenceStepError(CalculusError):
    """Failure while applying a doubling sequence; carries the step index."""

    def __init__(self, index: int, cause: CalculusError):
        super().__init__(f"step {index}: {cause}")
        self.index = index
        self.cause = cause
        self.tag = cause.tag


def _canonical(entries: Iterable[int]) -> tuple[int, ...]:
    out = [int(e) for e in entries]
    for e in out:
        if e < 0:
            raise CalculusError(f"exceptional data entries must be >= 0, got {e}")
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class ExceptionalData:
    """Truncated tuple of base-point and ``2**i``-section counts.

    Trailing zeros are dropped on construction, so ``ExceptionalData((3, 0))``
    and ``ExceptionalData((3,))`` compare equal.  The empty tuple stands for
    ``(0)``.
    """

    entries: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", _canonical(self.entries))

    def __getitem__(self, i: int) -> int:
        # Reading past the truncation gives the implicit zero.
        return self.entries[i] if i < len(self.entries) else 0

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def base_points(self) -> int:
        return self[0]

    def total(self) -> int:
        return sum(self.entries)

    def padded(self, n: int) -> list[int]:
        return [self[i] for i in range(max(n, len(self.entries)))]

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in (self.entries or (0,))) + ")"


def as_data(x: ExceptionalData | Sequence[int]) -> ExceptionalData:
    return x if isinstance(x, ExceptionalData) else ExceptionalData(tuple(x))


@dataclass(frozen=True)
class PencilState:
    genus: int
    data: ExceptionalData = field(default_factory=ExceptionalData)

    def __post_init__(self):
        if self.genus < 0:
            raise CalculusError(f"genus must be >= 0, got {self.genus}")
        object.__setattr__(self, "data", as_data(self.data))

    @classmethod
    def of(cls, genus: int, entries: Sequence[int]) -> "PencilState":
        return cls(int(genus), ExceptionalData(tuple(entries)))

    def __str__(self) -> str:
        return f"(g={self.genus},{self.data})"


@dataclass(frozen=True)
class DoublingSequence:
    """Partial-doubling sizes ``[k_1, ..., k_d]``.

    Construction does not validate; see :func:`validate_sequence`.
    """

    steps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(k) for k in self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __str__(self) -> str:
        return "[" + ",".join(str(k) for k in self.steps) + "]"


def as_sequence(x: DoublingSequence | Sequence[int]) -> DoublingSequence:
    return x if isinstance(x, DoublingSequence) else DoublingSequence(tuple(x))


@dataclass(frozen=True)
class DoublingOutcome:
    final: PencilState
    blowup_count: int
    trace: tuple[PencilState, ...]


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class AdjunctionReport:
    clean: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.clean


def blow_up(state: PencilState, b: int) -> PencilState:
    """Blow up ``b`` base points, turning them into exceptional sections."""
    m = state.data.padded(2)
    if b < 0:
        raise CalculusError(f"cannot blow up a negative number of points ({b})")
    if b > m[0]:
        raise CalculusError(
            f"cannot blow up {b} base points: only {m[0]} available (short by {b - m[0]})"
        )
    m[0] -= b
    m[1] += b
    return PencilState(state.genus, ExceptionalData(tuple(m)))


def blow_down(state: PencilState, b: int) -> PencilState:
    m = state.data.padded(2)
    if b < 0:
        raise CalculusError(f"cannot blow down a negative number of sections ({b})")
    if b > m[1]:
        raise CalculusError(
            f"cannot blow down {b} sections: only {m[1]} available (short by {b - m[1]})"
        )
    m[0] += b
    m[1] -= b
    return PencilState(state.genus, ExceptionalData(tuple(m)))


def check_doubling_hypothesis(genus: int, k: int) -> None:
    if genus < 2:
        raise DoublingHypothesisError(f"doubling needs genus >= 2, got {genus}")
    if k > 2 * genus - 2:
        raise DoublingHypothesisError(
            f"doubling {k} base points needs k <= 2g-2 = {2 * genus - 2}"
        )


def partial_double(state: PencilState, k: int, strict: bool = True) -> PencilState:
    """Blow up all but ``k`` base points, then double the resulting pencil.

    The new genus is ``2g + k - 1`` and the data becomes
    ``(4k, 0, m_0 + m_1 - k, m_2, ..., m_r)``.  With ``k == m_0`` this is the
    ordinary full double.
    """
    m = state.data.padded(2)
    if k < 1:
        raise CalculusError(f"partial double needs k >= 1, got {k}")
    if k > m[0]:
        raise CalculusError(f"partial double along {k} points but only {m[0]} base points")
    if strict:
        check_doubling_hypothesis(state.genus, k)
    new = [4 * k, 0, m[0] + m[1] - k] + m[2:]
    return PencilState(2 * state.genus + k - 1, ExceptionalData(tuple(new)))


def validate_sequence(m0: int, seq: DoublingSequence | Sequence[int]) -> ValidityReport:
    """Check the syntactic constraints ``k_1 <= m0``, ``k_j >= 1``, ``4k_j >= k_{j+1}``."""
    ks = list(as_sequence(seq))
    problems = []
    if ks and ks[0] > m0:
        problems.append(f"k_1 = {ks[0]} exceeds m_0 = {m0}")
    for j, k in enumerate(ks, 1):
        if k < 1:
            problems.append(f"k_{j} = {k} is below 1")
    for j in range(len(ks) - 1):
        if ks[j + 1] > 4 * ks[j]:
            problems.append(f"k_{j + 2} = {ks[j + 1]} exceeds 4*k_{j + 1} = {4 * ks[j]}")
    return ValidityReport(not problems, tuple(problems))


def apply_sequence(
    state: PencilState, seq: DoublingSequence | Sequence[int], strict: bool = True
) -> DoublingOutcome:
    """Run a partial-doubling sequence step by step.

    Each step blows up ``m_0 - k_j`` base points and then doubles along the
    remaining ``k_j``.  The blow-up count includes a final blow-up of every
    base point left at the end, so it is the number of exceptional spheres
    added to the start manifold when the result is viewed as a fibration.
    """
    ks = as_sequence(seq)
    trace = [state]
    cur = state
    blowups = 0
    for j, k in enumerate(ks, 1):
        try:
            if j > 1 and k > 4 * ks[j - 2]:
                raise CalculusError(f"k_{j} = {k} exceeds 4*k_{j - 1} = {4 * ks[j - 2]}")
            m0 = cur.data.base_points
            if k < 1 or k > m0:
                raise CalculusError(f"k_{j} = {k} is outside 1..{m0}")
            cur = blow_up(cur, m0 - k)
            blowups += m0 - k
            trace.append(cur)
            cur = partial_double(cur, k, strict=strict)
            trace.append(cur)
        except CalculusError as exc:
            raise SequenceStepError(j, exc) from exc
    blowups += cur.data.base_points
    return DoublingOutcome(cur, blowups, tuple(trace))


def closed_forms(g0: int, m0: int, seq: DoublingSequence | Sequence[int]) -> tuple[int, int]:
    """Blow-up count ``m0 + 3*sum(k)`` and genus ``2**d g0 + sum 2**(d-i) (k_i - 1)``."""
    ks = list(as_sequence(seq))
    report = validate_sequence(m0, ks)
    if not report:
        raise CalculusError("invalid doubling sequence: " + "; ".join(report.violations))
    d = len(ks)
    M = m0 + 3 * sum(ks)
    g = (g0 << d) + sum((k - 1) << (d - i) for i, k in enumerate(ks, 1))
    return M, g


def normalize(data: ExceptionalData | Sequence[int]) -> ExceptionalData:
    """Merge the first two entries; the blow-up/blow-down class representative."""
    m = as_data(data).padded(2)
    return ExceptionalData((m[0] + m[1],) + tuple(m[2:]))


def adjunction_check(state: PencilState) -> AdjunctionReport:
    bound = 2 * state.genus - 2
    reasons = []
    m0 = state.data.base_points
    if m0 > bound:
        reasons.append(f"m_0 = {m0} exceeds 2g-2 = {bound}")
    weighted = sum(e << i for i, e in enumerate(state.data.entries[1:]))
    if weighted > bound:
        reasons.append(f"weighted multisection degree {weighted} exceeds 2g-2 = {bound}")
    return AdjunctionReport(not reasons, tuple(reasons))
