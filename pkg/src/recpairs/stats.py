"""Structural statistics of one concrete pair: unions, intersections, modes."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .setcore import (
    RecoveringPair,
    UniformKind,
    full_mask,
    lex_key,
    popcount,
    uniformity,
)


class NotUniformError(ValueError):
    """The quantity is only defined for completely uniform pairs."""


def _mode(values) -> int:
    """Most frequent value, smallest on ties."""
    return _mode_of_counts(Counter(values))


def _mode_of_counts(counts) -> int:
    top = max(counts.values())
    return min(v for v, c in counts.items() if c == top)


def union_histogram(pair: RecoveringPair) -> dict[int, int]:
    """Number of cross pairs per union size, for every size 0..n."""
    hist = dict.fromkeys(range(pair.n + 1), 0)
    for a in pair.a.members:
        for b in pair.b.members:
            hist[popcount(a | b)] += 1
    return hist


def solutions_by_union(pair: RecoveringPair) -> dict[int, list[tuple[int, int]]]:
    """Map each attained union C to its list of (A, B) solutions."""
    groups: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for a in pair.a.members:
        for b in pair.b.members:
            groups[a | b].append((a, b))
    return dict(groups)


def solutions_per_union(pair: RecoveringPair, c_mask: int) -> int:
    return sum(1 for a in pair.a.members for b in pair.b.members if a | b == c_mask)


def count_full_union_solutions(pair: RecoveringPair) -> int:
    return solutions_per_union(pair, full_mask(pair.n))


def full_union_matching(pair: RecoveringPair) -> list[tuple[int, int]]:
    """The (A, B) with A | B = [n]; for recovering pairs these form a matching."""
    full = full_mask(pair.n)
    sols = [(a, b) for a in pair.a.members for b in pair.b.members if a | b == full]
    used_a = [a for a, _ in sols]
    used_b = [b for _, b in sols]
    if pair.verified:
        assert len(set(used_a)) == len(used_a), "full-union solutions repeat an A set"
        assert len(set(used_b)) == len(used_b), "full-union solutions repeat a B set"
    return sols


@dataclass(frozen=True)
class CupcapViolation:
    first: tuple[int, int]
    second: tuple[int, int]


def check_cupcap(pair: RecoveringPair) -> tuple[bool, CupcapViolation | None]:
    """Within each union class, the intersections must be pairwise distinct."""
    for sols in solutions_by_union(pair).values():
        seen: dict[int, tuple[int, int]] = {}
        for a, b in sols:
            cap = a & b
            if cap in seen:
                return False, CupcapViolation(seen[cap], (a, b))
            seen[cap] = (a, b)
    return True, None


def aharoni_sum(pair: RecoveringPair) -> int:
    """Sum over cross pairs of 2^|A & B|, exact."""
    return sum(1 << popcount(a & b) for a in pair.a.members for b in pair.b.members)


@dataclass(frozen=True)
class PairStatistics:
    """Finite-pair versions of u, t, c, m_S, m_A.

    ``c``, ``m_s`` and ``m_a`` are ``None`` unless the pair is completely
    uniform. ``degenerate`` flags the mode-size-zero case where t is set to 0.
    """

    n: int
    histogram: dict[int, int]
    u_mode: Fraction
    mode_union_size: int
    average_solutions: Fraction
    t_density: float
    crowded_sets: list[int]
    c: Fraction | None = None
    m_s: Fraction | None = None
    m_a: Fraction | None = None
    degenerate: bool = False
    m_a_per_set: dict[int, Fraction] = field(default_factory=dict)


def _t_from_average(avg: Fraction, size: int) -> float:
    if size == 0:
        return 0.0
    return (math.log2(avg.numerator) - math.log2(avg.denominator)) / size


def _asymmetric_intersection(
    pair: RecoveringPair, crowded: list[int], groups: dict[int, list[tuple[int, int]]]
) -> tuple[Fraction, dict[int, Fraction]]:
    # For each A used in a crowded C, fix the lexicographically smallest such C.
    fixed: dict[int, int] = {}
    for c in sorted(crowded, key=lex_key):
        for a, _ in groups[c]:
            fixed.setdefault(a, c)
    per_set: dict[int, Fraction] = {}
    for a, c in fixed.items():
        sizes = [popcount(a & b) for _, b in groups[c]]
        per_set[a] = Fraction(_mode(sizes), pair.n)
    return Fraction(_mode(per_set.values())), per_set


def compute_statistics(pair: RecoveringPair) -> PairStatistics:
    n = pair.n
    hist = union_histogram(pair)
    size = _mode_of_counts(hist)
    groups = solutions_by_union(pair)
    total = sum(len(v) for c, v in groups.items() if popcount(c) == size)
    avg = Fraction(total, math.comb(n, size))
    t = _t_from_average(avg, size)
    # Crowded: at least half the average number of solutions, compared exactly.
    crowded = sorted(
        (c for c, v in groups.items() if popcount(c) == size and 2 * len(v) >= avg),
        key=lex_key,
    )
    stats = dict(
        n=n,
        histogram=hist,
        u_mode=Fraction(size, n),
        mode_union_size=size,
        average_solutions=avg,
        t_density=t,
        crowded_sets=crowded,
        degenerate=size == 0,
    )
    u = uniformity(pair.a, pair.b)
    if u.kind is UniformKind.COMPLETELY_UNIFORM:
        c = Fraction(u.k, n)
        m_a, per_set = _asymmetric_intersection(pair, crowded, groups)
        stats.update(c=c, m_s=2 * c - Fraction(size, n), m_a=m_a, m_a_per_set=per_set)
    return PairStatistics(**stats)


def relative_set_size(pair: RecoveringPair) -> Fraction:
    s = compute_statistics(pair)
    if s.c is None:
        raise NotUniformError("c is defined only for completely uniform pairs")
    return s.c


def symmetric_intersection_size(pair: RecoveringPair) -> Fraction:
    s = compute_statistics(pair)
    if s.m_s is None:
        raise NotUniformError("m_S is defined only for completely uniform pairs")
    return s.m_s


def asymmetric_intersection_size(pair: RecoveringPair) -> Fraction:
    s = compute_statistics(pair)
    if s.m_a is None:
        raise NotUniformError("m_A is defined only for completely uniform pairs")
    return s.m_a
