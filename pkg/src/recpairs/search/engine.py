"""Exhaustive search for extremal recovering pairs on small ground sets.

The outer search enumerates A-families depth first, adding subsets in
increasing bitmask order. Because being recovering is hereditary, the B-sets
compatible with a fixed A-family form a graph whose cliques are exactly the
admissible B-families, so the best B is a maximum-weight clique. Growing the
A-family only deletes vertices and edges, which gives both an incremental
update and an admissible bound for the whole subtree.

Families that are not lexicographically minimal in their orbit under
permutations of [n] are skipped; minimality is inherited by prefixes, so the
reduction is exact.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..constructions import aharoni_counterexample, canonical_pair, hexad_pair
from ..setcore import RecoveringPair, SetSystem, Status, is_recovering
from ..stats import aharoni_sum, count_full_union_solutions
from . import kernels as _kernels
from .tables import (
    AHARONI,
    F_COUNT,
    MAX_SEARCH_N,
    OBJECTIVES,
    SIZE,
    conflict_table,
    permutation_table,
    suffix_table,
    weight_table,
)


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    time_limit: float | None = None
    n: int | None = None


@dataclass(frozen=True)
class Certificate:
    """A family pair rejected while extending the search: claimed non-recovering."""

    a_sets: tuple[int, ...]
    b_sets: tuple[int, ...]


@dataclass
class SearchResult:
    objective: str
    n: int
    best_value: int
    witness_pair: RecoveringPair
    exhausted: bool
    nodes: int = 0
    pruned: int = 0
    elapsed: float = 0.0
    backend: str = ""
    certificates: list[Certificate] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "objective": self.objective,
            "n": self.n,
            "best_value": self.best_value,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "pruned": self.pruned,
            "backend": self.backend,
        }


def objective_value(pair: RecoveringPair, objective: str) -> int:
    if objective == SIZE:
        return len(pair.a) * len(pair.b)
    if objective == F_COUNT:
        return count_full_union_solutions(pair)
    if objective == AHARONI:
        return aharoni_sum(pair)
    raise ValueError(f"unknown objective {objective!r}")


def objective_cap(n: int, objective: str) -> int:
    """A proven upper bound; reaching it ends the search early."""
    if objective == F_COUNT:
        return math.isqrt(2**n)
    return 3**n


def seed_pairs(n: int) -> list[RecoveringPair]:
    """Known constructions on [n] used as initial incumbents."""
    seeds = []
    for k in range(n + 1):
        p = canonical_pair(n, (1 << k) - 1)
        seeds.extend([p, p.mirror()])
    if n == 6:
        seeds.extend([hexad_pair(), aharoni_counterexample()])
    return seeds


class _Stop(Exception):
    pass


class _Searcher:
    def __init__(self, n, objective, budget, backend, record, cert_seed, sym_depth, deadline=None):
        self.n = n
        self.N = 1 << n
        self.objective = objective
        self.impl = _kernels.get(backend)
        self.ctx = self.impl.Context(
            n,
            conflict_table(n),
            weight_table(n, objective),
            suffix_table(n, objective),
            permutation_table(n),
        )
        self.cap = objective_cap(n, objective)
        self.max_nodes = budget.max_nodes
        # Wall clock, so one deadline can be shared with worker processes.
        if deadline is None and budget.time_limit is not None:
            deadline = time.time() + budget.time_limit
        self.deadline = deadline
        self.sym_depth = self.N if sym_depth is None else sym_depth
        self.nodes = 0
        self.pruned = 0
        self.best = -1
        self.best_fam: list[int] | None = None
        self.best_clique = 0
        self.exhausted = True
        self.record = record
        self.rng = random.Random(cert_seed)
        self.certs: list[Certificate] = []
        self.events = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            self._out_of_budget()
        if self.deadline is not None and self.nodes % 64 == 0 and time.time() > self.deadline:
            self._out_of_budget()

    def _sample(self, a_sets, b_sets) -> None:
        self.events += 1
        cert = Certificate(tuple(a_sets), tuple(b_sets))
        if len(self.certs) < self.record:
            self.certs.append(cert)
        else:
            j = self.rng.randrange(self.events)
            if j < self.record:
                self.certs[j] = cert

    def _record_removals(self, fam_sorted, old, new) -> None:
        old_valid, old_adj = int(old[0]), old[1]
        new_valid, new_adj = int(new[0]), new[1]
        for b in range(self.N):
            if not old_valid >> b & 1:
                continue
            if not new_valid >> b & 1:
                self._sample(fam_sorted, (b,))
                continue
            lost = int(old_adj[b]) & old_valid & ~int(new_adj[b]) & new_valid
            m = lost
            while m:
                low = m & -m
                b2 = low.bit_length() - 1
                if b2 > b:
                    self._sample(fam_sorted, (b, b2))
                m ^= low

    def _clique(self, state, extra_row):
        return self.impl.max_weight_clique(self.ctx, state, extra_row, self.deadline or 0.0)

    def evaluate(self, fam, state) -> tuple[int, int, bool]:
        value, clique, complete = self._clique(state, -1)
        if clique == 0:
            clique = int(state[0]) & -int(state[0])
        return value, clique, complete

    def bound(self, fam, state, value) -> int:
        last = fam[-1]
        rest = self.N - 1 - last
        if self.objective == SIZE:
            return value // len(fam) * (len(fam) + rest)
        if rest == 0:
            return value
        bound, _, complete = self._clique(state, last)
        if not complete:
            self._out_of_budget()
        return bound

    def _out_of_budget(self) -> None:
        self.exhausted = False
        raise _Stop

    def visit(self, fam, mask, state) -> None:
        self._tick()
        value, clique, complete = self.evaluate(fam, state)
        # An interrupted clique is still a valid B-family, only maybe not the best.
        if value > self.best:
            self.best, self.best_fam, self.best_clique = value, list(fam), clique
            if value >= self.cap:
                raise _Stop
        if not complete:
            self._out_of_budget()
        if self.bound(fam, state, value) <= self.best:
            self.pruned += 1
            return
        omega = value // len(fam) if self.objective == SIZE else None
        for a in range(fam[-1] + 1, self.N):
            if omega is not None and omega * (len(fam) + self.N - a) <= self.best:
                self.pruned += 1
                break
            child = fam + [a]
            if len(child) <= self.sym_depth and not self.impl.is_canonical(self.ctx, child):
                continue
            cmask = mask | (1 << a)
            cstate = self.impl.extend(self.ctx, state, cmask, a)
            if self.record:
                self._record_removals(child, state, cstate)
            self.visit(child, cmask, cstate)

    def run_from(self, prefix: list[int]) -> None:
        state = self.impl.root_state(self.ctx)
        mask = 0
        for i, a in enumerate(prefix):
            if i + 1 <= self.sym_depth and not self.impl.is_canonical(self.ctx, prefix[: i + 1]):
                return
            mask |= 1 << a
            state = self.impl.extend(self.ctx, state, mask, a)
        try:
            self.visit(list(prefix), mask, state)
        except _Stop:
            pass

    def run_roots(self) -> None:
        root = self.impl.root_state(self.ctx)
        try:
            for a in range(self.N):
                if 1 <= self.sym_depth and not self.impl.is_canonical(self.ctx, [a]):
                    continue
                state = self.impl.extend(self.ctx, root, 1 << a, a)
                if self.record:
                    self._record_removals([a], root, state)
                self.visit([a], 1 << a, state)
        except _Stop:
            pass

    def witness(self) -> RecoveringPair | None:
        if self.best_fam is None:
            return None
        b_sets = tuple(b for b in range(self.N) if self.best_clique >> b & 1)
        return RecoveringPair(SetSystem(self.n, tuple(self.best_fam)), SetSystem(self.n, b_sets))


def _subtree_task(args):
    n, objective, budget, backend, incumbent, prefix, sym_depth, deadline = args
    s = _Searcher(n, objective, budget, backend, 0, 0, sym_depth, deadline)
    s.best = incumbent
    s.run_from(prefix)
    w = s.witness() if s.best > incumbent else None
    return s.best, w, s.exhausted, s.nodes, s.pruned, s.best >= s.cap


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("RECPAIRS_THREADS", "1")))
    except ValueError:
        return 1


def search(
    n: int,
    objective: str = SIZE,
    budget: SearchBudget | None = None,
    *,
    seed_incumbents: bool = True,
    backend: str | None = None,
    threads: int | None = None,
    record_certificates: int = 0,
    certificate_seed: int = 0,
    symmetry_depth: int | None = None,
) -> SearchResult:
    """Maximise ``objective`` over recovering pairs on [n] (n <= 6).

    ``exhausted`` is True iff the returned value is proven optimal. With
    ``threads > 1`` the depth-two subtrees are searched in worker processes
    and merged by maximum, ties going to the earliest subtree in search
    order; an exhausted result is the same for every thread count.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if not 1 <= n <= MAX_SEARCH_N:
        raise ValueError(f"search supports 1 <= n <= {MAX_SEARCH_N}")
    budget = budget or SearchBudget()
    threads = _default_threads() if threads is None else threads
    start = time.perf_counter()

    incumbent, incumbent_pair = -1, None
    if seed_incumbents:
        for p in seed_pairs(n):
            v = objective_value(p, objective)
            if v > incumbent:
                incumbent, incumbent_pair = v, p

    searcher = _Searcher(n, objective, budget, backend, record_certificates, certificate_seed, symmetry_depth)
    searcher.best = incumbent
    if incumbent >= searcher.cap:
        best, found, nodes, pruned, exhausted = incumbent, None, 0, 0, True
    elif threads <= 1 or record_certificates:
        searcher.run_roots()
        nodes, pruned, exhausted = searcher.nodes, searcher.pruned, searcher.exhausted
        found = searcher.witness() if searcher.best > incumbent else None
        best = searcher.best
    else:
        best, found, nodes, pruned, exhausted = _parallel(searcher, incumbent, budget, backend, threads, symmetry_depth)

    if found is not None:
        witness = found.verify()
    else:
        witness = incumbent_pair
    if witness is None or not is_recovering(witness.a, witness.b):
        raise AssertionError("search witness failed re-verification")
    witness = RecoveringPair(witness.a, witness.b, status=Status.RECOVERING, name=witness.name)
    value = objective_value(witness, objective)
    if value != best:
        raise AssertionError(f"witness value {value} != reported best {best}")
    return SearchResult(
        objective=objective,
        n=n,
        best_value=best,
        witness_pair=witness,
        exhausted=exhausted or best >= searcher.cap,
        nodes=nodes,
        pruned=pruned,
        elapsed=time.perf_counter() - start,
        backend=searcher.impl.BACKEND,
        certificates=searcher.certs,
    )


def _parallel(searcher, incumbent, budget, backend, threads, sym_depth):
    # Singletons run here; each canonical two-set prefix becomes a task.
    impl, ctx, N = searcher.impl, searcher.ctx, searcher.N
    order: list[tuple[str, object]] = []
    tasks = []
    root = impl.root_state(ctx)
    depth = N if sym_depth is None else sym_depth
    for a in range(N):
        if depth >= 1 and not impl.is_canonical(ctx, [a]):
            continue
        order.append(("single", a))
        for a2 in range(a + 1, N):
            prefix = [a, a2]
            if depth >= 2 and not impl.is_canonical(ctx, prefix):
                continue
            order.append(("task", len(tasks)))
            tasks.append((searcher.n, searcher.objective, budget, backend, incumbent, prefix, sym_depth,
                          searcher.deadline))

    singles = {}
    nodes = pruned = 0
    exhausted_singles = True
    for a in range(N):
        if depth >= 1 and not impl.is_canonical(ctx, [a]):
            continue
        state = impl.extend(ctx, root, 1 << a, a)
        nodes += 1
        value, clique, complete = searcher.evaluate([a], state)
        exhausted_singles &= complete
        singles[a] = (value, RecoveringPair(
            SetSystem(searcher.n, (a,)),
            SetSystem(searcher.n, tuple(b for b in range(N) if clique >> b & 1)),
        ))

    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_subtree_task, tasks))

    exhausted = exhausted_singles
    best, found = incumbent, None
    for kind, key in order:
        if kind == "single":
            value, pair = singles[key]
        else:
            value, pair, ex, nd, pr, _ = results[key]
            exhausted &= ex
            nodes += nd
            pruned += pr
        if pair is not None and value > best:
            best, found = value, pair
    return best, found, nodes, pruned, exhausted


def search_max_size(n: int, budget: SearchBudget | None = None, **kwargs) -> SearchResult:
    return search(n, SIZE, budget, **kwargs)


def search_max_f(n: int, budget: SearchBudget | None = None, **kwargs) -> SearchResult:
    return search(n, F_COUNT, budget, **kwargs)


def search_max_aharoni(n: int, budget: SearchBudget | None = None, **kwargs) -> SearchResult:
    return search(n, AHARONI, budget, **kwargs)


@dataclass
class ConjectureRow:
    n: int
    max_size: int
    bound: int
    exhausted: bool
    nodes: int
    elapsed: float

    @property
    def passes(self) -> bool:
        return self.exhausted and self.max_size == self.bound


def verify_conjecture_range(n_max: int, budget: SearchBudget | None = None, **kwargs) -> list[ConjectureRow]:
    """Exhaustive max |A||B| for n = 1..n_max, compared with 2^n (n_max <= 4)."""
    if not 1 <= n_max <= 4:
        raise ValueError("verify_conjecture_range supports 1 <= n_max <= 4")
    rows = []
    for n in range(1, n_max + 1):
        r = search_max_size(n, budget, **kwargs)
        rows.append(ConjectureRow(n, r.best_value, 2**n, r.exhausted, r.nodes, r.elapsed))
    return rows
