"""Positive Dehn-twist words seen through their action on first homology.

Conventions used throughout the package:

* a letter ``t_a`` acts by the transvection ``x -> x + <x, a> a``;
* conjugation obeys ``t_{phi(c)} = phi t_c phi^{-1}``;
* the product of a word ``t_1 t_2 ... t_r`` is the matrix product
  ``T_1 T_2 ... T_r`` (so on column vectors the last letter acts first).

With these, a right Hurwitz move ``(t_a, t_b) -> (t_b, t_{T_b^{-1} a})``
preserves the product exactly.  Every equivalence verdict computed here is
about homology images only: equal images are necessary, not sufficient, for
mapping-class equivalence.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Sequence

from . import symplectic as sp
from .symplectic import Matrix, Vector


class WordError(ValueError):
    pass


class StabilizerError(WordError):
    def __init__(self, kind: "Stabilizer", message: str):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True)
class TwistLetter:
    cls: Vector
    label: Optional[str] = None
    separating: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cls", tuple(int(x) for x in self.cls))
        zero = not any(self.cls)
        if zero and not self.separating:
            raise WordError("zero class needs the separating flag")
        if self.separating and not zero:
            raise WordError("separating letters must carry the zero class")

    @classmethod
    def of(cls, vec: Sequence[int], label: Optional[str] = None) -> "TwistLetter":
        vec = tuple(vec)
        return cls(vec, label, separating=not any(vec))

    def key(self) -> tuple:
        return (sp.sign_normalize(self.cls), self.separating)

    def with_class(self, vec: Sequence[int]) -> "TwistLetter":
        return replace(self, cls=tuple(vec))


@dataclass(frozen=True)
class Factorization:
    genus: int
    boundary_count: int = 0
    letters: tuple[TwistLetter, ...] = ()

    def __post_init__(self):
        if self.genus < 0 or self.boundary_count < 0:
            raise WordError("genus and boundary count must be non-negative")
        object.__setattr__(self, "letters", tuple(self.letters))
        for i, letter in enumerate(self.letters):
            if len(letter.cls) != 2 * self.genus:
                raise WordError(
                    f"letter {i} has class of length {len(letter.cls)}, expected {2 * self.genus}"
                )

    @classmethod
    def from_classes(
        cls, genus: int, classes: Iterable[Sequence[int]], boundary_count: int = 0
    ) -> "Factorization":
        return cls(genus, boundary_count, tuple(TwistLetter.of(c) for c in classes))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def classes(self) -> list[Vector]:
        return [l.cls for l in self.letters]

    @property
    def dim(self) -> int:
        return 2 * self.genus

    def canonical_key(self) -> tuple:
        """Sign-normalized letter encoding; labels are ignored."""
        return tuple(l.key() for l in self.letters)

    def with_letters(self, letters: Iterable[TwistLetter]) -> "Factorization":
        return Factorization(self.genus, self.boundary_count, tuple(letters))


intersection_pairing = sp.pairing
transvection = sp.transvection


def letter_matrix(letter: TwistLetter) -> Matrix:
    return sp.transvection(letter.cls)


def _check_range(f: Factorization, lo: int, hi: int) -> None:
    # 1-based inclusive ranges
    if not (1 <= lo <= hi <= len(f)):
        raise WordError(f"range {lo}..{hi} is not inside 1..{len(f)}")


def subword_product(f: Factorization, lo: int, hi: int) -> Matrix:
    _check_range(f, lo, hi)
    out = sp.identity(f.dim)
    for letter in f.letters[lo - 1:hi]:
        out = sp.matmul(out, letter_matrix(letter))
    return out


def word_product(f: Factorization) -> Matrix:
    out = sp.identity(f.dim)
    for letter in f.letters:
        out = sp.matmul(out, letter_matrix(letter))
    return out


def prefix_products(f: Factorization) -> list[Matrix]:
    """``[I, T_1, T_1 T_2, ..., T_1 ... T_r]``."""
    out = [sp.identity(f.dim)]
    for letter in f.letters:
        out.append(sp.matmul(out[-1], letter_matrix(letter)))
    return out


def hurwitz_move(f: Factorization, i: int, direction: str = "right") -> Factorization:
    """Elementary Hurwitz move on letters ``i, i+1`` (1-based).

    ``right``: ``(t_a, t_b) -> (t_b, t_{T_b^{-1} a})``;
    ``left``:  ``(t_a, t_b) -> (t_{T_a b}, t_a)``, the inverse of ``right``.
    """
    if not (1 <= i < len(f)):
        raise WordError(f"Hurwitz index {i} outside 1..{len(f) - 1}")
    x, y = f.letters[i - 1], f.letters[i]
    if direction == "right":
        new = (y, x.with_class(sp.act_transvection(y.cls, x.cls, -1)))
    elif direction == "left":
        new = (y.with_class(sp.act_transvection(x.cls, y.cls, 1)), x)
    else:
        raise WordError(f"direction must be 'left' or 'right', got {direction!r}")
    letters = list(f.letters)
    letters[i - 1:i + 1] = new
    return f.with_letters(letters)


def global_conjugate(f: Factorization, phi: Matrix) -> Factorization:
    if len(phi) != f.dim or not sp.is_symplectic(phi):
        raise WordError("conjugator must be a symplectic matrix of matching size")
    return f.with_letters(l.with_class(sp.apply(phi, l.cls)) for l in f.letters)


class Stabilizer(str, Enum):
    FIXES = "fixes"
    REVERSES = "reverses"
    NEITHER = "neither"


def stabilizer_type(f: Factorization, lo: int, hi: int, alpha: Sequence[int]) -> Stabilizer:
    """Does the subword product fix ``alpha``, send it to ``-alpha``, or neither?

    This is a homology-level stand-in for the geometric condition on the loop.
    """
    alpha = tuple(alpha)
    if len(alpha) != f.dim:
        raise WordError(f"alpha has length {len(alpha)}, expected {f.dim}")
    if not any(alpha):
        raise WordError("alpha must be nonzero")
    image = sp.apply(subword_product(f, lo, hi), alpha)
    if image == alpha:
        return Stabilizer.FIXES
    if image == tuple(-x for x in alpha):
        return Stabilizer.REVERSES
    return Stabilizer.NEITHER


def partial_conjugate(
    f: Factorization,
    lo: int,
    hi: int,
    alpha: Sequence[int],
    q: int = 1,
    strict: bool = True,
    allow_twisted: bool = False,
) -> Factorization:
    """Replace each class in ``lo..hi`` by its image under ``T_alpha^q``."""
    if q == 0:
        raise WordError("q must be nonzero")
    kind = stabilizer_type(f, lo, hi, alpha)
    if strict:
        ok = kind is Stabilizer.FIXES or (allow_twisted and kind is Stabilizer.REVERSES)
        if not ok:
            raise StabilizerError(kind, f"subword {lo}..{hi} {kind.value} alpha; conjugation refused")
    letters = list(f.letters)
    for idx in range(lo - 1, hi):
        l = letters[idx]
        letters[idx] = l.with_class(sp.act_transvection(alpha, l.cls, q))
    return f.with_letters(letters)


def boundary_relation_check(f: Factorization) -> bool:
    """Necessary condition for ``f`` to factor the boundary multitwist: trivial product."""
    return word_product(f) == sp.identity(f.dim)


@dataclass(frozen=True)
class Fingerprint:
    rank: int
    classes: tuple[tuple[Vector, int], ...]
    orbit_size: int
    truncated: bool


def class_orbit(classes: Iterable[Sequence[int]], cap: int) -> tuple[int, bool]:
    """Size of the orbit of classes (up to sign) under the twists they generate."""
    gens = []
    for c in classes:
        c = sp.sign_normalize(c)
        if any(c) and c not in gens:
            gens.append(c)
    seen = set(gens)
    queue = deque(gens)
    while queue:
        v = queue.popleft()
        for a in gens:
            for p in (1, -1):
                w = sp.sign_normalize(sp.act_transvection(a, v, p))
                if w not in seen:
                    if len(seen) >= cap:
                        return len(seen), True
                    seen.add(w)
                    queue.append(w)
    return len(seen), False


def monodromy_fingerprint(f: Factorization, orbit_cap: int = 1000) -> Fingerprint:
    if orbit_cap < 1:
        raise WordError("orbit cap must be >= 1")
    counts: dict[Vector, int] = {}
    for l in f.letters:
        k = sp.sign_normalize(l.cls)
        counts[k] = counts.get(k, 0) + 1
    size, truncated = class_orbit(f.classes, orbit_cap)
    return Fingerprint(
        rank=sp.integer_rank(f.classes),
        classes=tuple(sorted(counts.items())),
        orbit_size=size,
        truncated=truncated,
    )
