"""Set systems on [n] as integer bitmasks, and the recovering-pair predicates.

A subset of [n] = {1, ..., n} is stored as a Python ``int`` whose bit ``i``
is set iff element ``i + 1`` belongs to the set. Python integers are
arbitrary-width, so the same representation serves ground sets far beyond a
machine word (the cap is :data:`MAX_GROUND`).
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace

MAX_GROUND = 1024


class GroundSetMismatch(ValueError):
    """Two families live on different ground sets."""


class DegenerateInput(ValueError):
    """The input has no well-defined answer (for example an empty family)."""


def mask_from_elements(elements: Iterable[int], n: int) -> int:
    """Bitmask of a set given by 1-based elements."""
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside ground set [1, {n}]")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    """Sorted 1-based elements of ``mask``."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def format_set(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


def lex_key(mask: int) -> tuple[int, ...]:
    """Ordering key comparing sets by their sorted element lists."""
    return tuple(elements_of(mask))


@dataclass(frozen=True)
class SetSystem:
    """An ordered family of distinct subsets of [n]."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"ground set size {self.n} outside [1, {MAX_GROUND}]")
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        limit = 1 << self.n
        for m in members:
            if not 0 <= m < limit:
                raise ValueError(f"set {m:#x} does not fit the ground set [1, {self.n}]")
        if len(set(members)) != len(members):
            raise ValueError("duplicate sets in family")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> SetSystem:
        """Build from 1-based element lists."""
        return cls(n, tuple(mask_from_elements(s, n) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self.members

    def as_lists(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def with_member(self, mask: int) -> SetSystem:
        return SetSystem(self.n, self.members + (mask,))


class Side(str, enum.Enum):
    """Which of the two recovering conditions a witness violates."""

    A = "A"  # A \ B = A' \ B' with A != A'
    B = "B"  # B \ A = B' \ A' with B != B'


@dataclass(frozen=True)
class Violation:
    """A quadruple (A, A', B, B') breaking one recovering condition.

    For ``side == Side.A``: ``a - b == a2 - b2`` and ``a != a2``.
    For ``side == Side.B``: ``b - a == b2 - a2`` and ``b != b2``.
    """

    a: int
    a2: int
    b: int
    b2: int
    side: Side

    def holds(self) -> bool:
        """True iff the quadruple really violates the stated condition."""
        if self.side is Side.A:
            return self.a != self.a2 and self.a & ~self.b == self.a2 & ~self.b2
        return self.b != self.b2 and self.b & ~self.a == self.b2 & ~self.a2

    def describe(self) -> str:
        a, a2, b, b2 = map(format_set, (self.a, self.a2, self.b, self.b2))
        if self.side is Side.A:
            return f"A={a}, A'={a2}, B={b}, B'={b2}: A\\B = A'\\B' but A != A'"
        return f"A={a}, A'={a2}, B={b}, B'={b2}: B\\A = B'\\A' but B != B'"


class Status(str, enum.Enum):
    UNVERIFIED = "unverified"
    RECOVERING = "recovering"
    VIOLATED = "violated"


def _check_ground(a_family: SetSystem, b_family: SetSystem) -> None:
    if a_family.n != b_family.n:
        raise GroundSetMismatch(f"ground sets differ: {a_family.n} vs {b_family.n}")


def _first_condition(a_family: SetSystem, b_family: SetSystem) -> Violation | None:
    # A \ B determines A: any collision of differences with distinct A is a witness.
    seen: dict[int, tuple[int, int]] = {}
    for b in b_family.members:
        nb = ~b
        for a in a_family.members:
            d = a & nb
            prev = seen.get(d)
            if prev is None:
                seen[d] = (a, b)
            elif prev[0] != a:
                return Violation(prev[0], a, prev[1], b, Side.A)
    return None


def _second_condition(a_family: SetSystem, b_family: SetSystem) -> Violation | None:
    seen: dict[int, tuple[int, int]] = {}
    for a in a_family.members:
        na = ~a
        for b in b_family.members:
            d = b & na
            prev = seen.get(d)
            if prev is None:
                seen[d] = (b, a)
            elif prev[0] != b:
                return Violation(prev[1], a, prev[0], b, Side.B)
    return None


def recovering_witness(a_family: SetSystem, b_family: SetSystem) -> Violation | None:
    """A violating quadruple, or ``None`` if the pair is recovering."""
    _check_ground(a_family, b_family)
    return _first_condition(a_family, b_family) or _second_condition(a_family, b_family)


def is_recovering(a_family: SetSystem, b_family: SetSystem) -> bool:
    """Whether A\\B determines A and B\\A determines B over all cross pairs.

    Runs in O(|A||B|) expected time by hashing each difference to the first
    set that produced it. Use :func:`recovering_witness` to get the violating
    quadruple.
    """
    return recovering_witness(a_family, b_family) is None


def cancellative_witness(a_family: SetSystem, b_family: SetSystem) -> Violation | None:
    """Like :func:`recovering_witness` but only cancelling against the same B (resp. A)."""
    _check_ground(a_family, b_family)
    for b in b_family.members:
        seen: dict[int, int] = {}
        for a in a_family.members:
            d = a & ~b
            if d in seen:
                return Violation(seen[d], a, b, b, Side.A)
            seen[d] = a
    for a in a_family.members:
        seen = {}
        for b in b_family.members:
            d = b & ~a
            if d in seen:
                return Violation(a, a, seen[d], b, Side.B)
            seen[d] = b
    return None


def is_cancellative(a_family: SetSystem, b_family: SetSystem) -> bool:
    return cancellative_witness(a_family, b_family) is None


def is_half_recovering(a_family: SetSystem, b_family: SetSystem) -> bool:
    """Only the first condition: A\\B = A'\\B' implies A = A'."""
    _check_ground(a_family, b_family)
    return _first_condition(a_family, b_family) is None


class UniformKind(str, enum.Enum):
    NON_UNIFORM = "non-uniform"
    UNIFORM = "uniform"
    COMPLETELY_UNIFORM = "completely-uniform"


@dataclass(frozen=True)
class Uniformity:
    kind: UniformKind
    k: int | None = None

    def __str__(self) -> str:
        if self.kind is UniformKind.NON_UNIFORM:
            return self.kind.value
        return f"{self.kind.value}({self.k})"


def uniformity(a_family: SetSystem, b_family: SetSystem) -> Uniformity:
    _check_ground(a_family, b_family)
    if not a_family.members or not b_family.members:
        raise DegenerateInput("uniformity is undefined for an empty family")
    sizes = {popcount(m) for m in a_family.members + b_family.members}
    if len(sizes) != 1:
        return Uniformity(UniformKind.NON_UNIFORM)
    (k,) = sizes
    if len(a_family) == len(b_family):
        return Uniformity(UniformKind.COMPLETELY_UNIFORM, k)
    return Uniformity(UniformKind.UNIFORM, k)


@dataclass(frozen=True)
class RecoveringPair:
    """Two families on a common ground set, with a cached verification status.

    Construct freely; call :meth:`verify` to run the predicate. A pair whose
    ``status`` is ``RECOVERING`` is guaranteed to satisfy :func:`is_recovering`.
    """

    a: SetSystem
    b: SetSystem
    status: Status = Status.UNVERIFIED
    witness: Violation | None = field(default=None, compare=False)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        _check_ground(self.a, self.b)

    @classmethod
    def from_sets(
        cls,
        n: int,
        a_sets: Iterable[Iterable[int]],
        b_sets: Iterable[Iterable[int]],
        name: str | None = None,
    ) -> RecoveringPair:
        return cls(SetSystem.from_sets(n, a_sets), SetSystem.from_sets(n, b_sets), name=name)

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def verified(self) -> bool:
        return self.status is Status.RECOVERING

    def verify(self) -> RecoveringPair:
        """Return a copy with ``status`` (and ``witness``) filled in."""
        w = recovering_witness(self.a, self.b)
        if w is None:
            return replace(self, status=Status.RECOVERING, witness=None)
        return replace(self, status=Status.VIOLATED, witness=w)

    def mirror(self) -> RecoveringPair:
        """The pair with the two families exchanged (recovering is symmetric)."""
        return replace(self, a=self.b, b=self.a, witness=None, status=self.status)

    def same_families(self, other: RecoveringPair) -> bool:
        return (
            self.n == other.n
            and set(self.a.members) == set(other.a.members)
            and set(self.b.members) == set(other.b.members)
        )


def pair_size(pair: RecoveringPair) -> int:
    """|A| * |B|."""
    return len(pair.a) * len(pair.b)


def naive_recovering(a_sets: Sequence[int], b_sets: Sequence[int]) -> bool:
    """Quadruple-loop reference predicate; slow, used as an independent oracle."""
    for a in a_sets:
        for a2 in a_sets:
            for b in b_sets:
                for b2 in b_sets:
                    if a != a2 and a & ~b == a2 & ~b2:
                        return False
                    if b != b2 and b & ~a == b2 & ~a2:
                        return False
    return True
