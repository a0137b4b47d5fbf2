"""Explicit recovering pairs and the disjoint-union product."""

from __future__ import annotations

import random
from functools import reduce

from .setcore import (
    MAX_GROUND,
    RecoveringPair,
    SetSystem,
    Status,
    elements_of,
    full_mask,
    is_recovering,
    popcount,
)

ENUMERATION_LIMIT = 20


class UnverifiedInput(ValueError):
    """A product factor has not been verified as recovering."""


def submasks(mask: int) -> list[int]:
    """All subsets of ``mask`` in increasing integer order."""
    out = []
    sub = 0
    while True:
        out.append(sub)
        if sub == mask:
            return out
        sub = (sub - mask) & mask


def canonical_pair(n: int, c_mask: int) -> RecoveringPair:
    """All subsets of C against all subsets of its complement."""
    if c_mask >> n:
        raise ValueError(f"C = {c_mask:#x} does not fit [1, {n}]")
    rest = full_mask(n) & ~c_mask
    if popcount(c_mask) > ENUMERATION_LIMIT or popcount(rest) > ENUMERATION_LIMIT:
        raise ValueError("canonical pair too large to enumerate (|C| or n-|C| > 20)")
    c_label = ",".join(map(str, elements_of(c_mask)))
    return RecoveringPair(
        SetSystem(n, tuple(submasks(c_mask))),
        SetSystem(n, tuple(submasks(rest))),
        status=Status.RECOVERING,
        name=f"canonical:{n}:{c_label}",
    )


def _complements(n: int, pairs: list[tuple[int, int]]) -> list[list[int]]:
    return [[e for e in range(1, n + 1) if e not in p] for p in pairs]


def hexad_pair() -> RecoveringPair:
    """The n = 6 pair of complements of 2-sets with three full unions."""
    a = _complements(6, [(1, 2), (3, 4), (5, 6)])
    b = _complements(6, [(2, 3), (4, 5), (6, 1)])
    pair = RecoveringPair.from_sets(6, a, b, name="hexad")
    return pair.verify()


def aharoni_counterexample() -> RecoveringPair:
    """The hexad pair with the empty set adjoined to both families."""
    h = hexad_pair()
    pair = RecoveringPair(h.a.with_member(0), h.b.with_member(0), name="aharoni-counterexample")
    return pair.verify()


def product(p1: RecoveringPair, p2: RecoveringPair) -> RecoveringPair:
    """Disjoint-union product; p2's element i becomes n1 + i.

    The result is marked recovering without re-running the predicate, since
    the product of recovering pairs is recovering. Call ``.verify()`` to check.
    """
    for p in (p1, p2):
        if not p.verified:
            raise UnverifiedInput(f"product factor {p.name or ''} is not verified recovering")
    n = p1.n + p2.n
    if n > MAX_GROUND:
        raise ValueError(f"product ground set {n} exceeds {MAX_GROUND}")
    shift = p1.n
    a = tuple(x | (y << shift) for x in p1.a.members for y in p2.a.members)
    b = tuple(x | (y << shift) for x in p1.b.members for y in p2.b.members)
    name = f"({p1.name})x({p2.name})" if p1.name and p2.name else None
    return RecoveringPair(SetSystem(n, a), SetSystem(n, b), status=Status.RECOVERING, name=name)


def power(p: RecoveringPair, r: int) -> RecoveringPair:
    """r-fold product of ``p`` with itself, folded from the left."""
    if r < 1:
        raise ValueError("power requires r >= 1")
    if not p.verified:
        raise UnverifiedInput("power base is not verified recovering")
    result = reduce(product, [p] * r)
    if p.name and r > 1:
        result = RecoveringPair(result.a, result.b, status=result.status, name=f"{p.name}^{r}")
    return result


def swap_and_multiply(p: RecoveringPair) -> RecoveringPair:
    """Product of ``p`` with its mirror, giving |A| = |B| on 2n elements."""
    return product(p, p.mirror())


def random_recovering_pair(
    rng: random.Random,
    n_max: int = 5,
    max_family: int = 4,
    max_tries: int = 10_000,
) -> RecoveringPair:
    """Rejection-sample a small recovering pair.

    Draws a ground size in [1, n_max] and random families of 1..max_family
    distinct subsets until the pair passes :func:`is_recovering`.
    """
    for _ in range(max_tries):
        n = rng.randint(1, n_max)
        universe = 1 << n
        ka = rng.randint(1, min(max_family, universe))
        kb = rng.randint(1, min(max_family, universe))
        a = SetSystem(n, tuple(rng.sample(range(universe), ka)))
        b = SetSystem(n, tuple(rng.sample(range(universe), kb)))
        if is_recovering(a, b):
            return RecoveringPair(a, b, status=Status.RECOVERING)
    raise RuntimeError("rejection sampling did not produce a recovering pair")
