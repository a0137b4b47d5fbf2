import itertools
import random

import pytest

from recpairs.search import (
    AHARONI,
    F_COUNT,
    OBJECTIVES,
    SIZE,
    SearchBudget,
    objective_value,
    search,
    seed_pairs,
    verify_conjecture_range,
)
from recpairs.search import kernels
from recpairs.search.tables import conflict_table, permutation_table, suffix_table, weight_table
from recpairs.setcore import is_recovering, naive_recovering, popcount

BACKENDS = sorted(kernels.available())


def brute_force(n):
    """Best value of every objective over all family pairs on [n]."""
    N = 1 << n
    fams = [c for r in range(1, N + 1) for c in itertools.combinations(range(N), r)]
    best = dict.fromkeys(OBJECTIVES, 0)
    for fa in fams:
        for fb in fams:
            if not naive_recovering(fa, fb):
                continue
            best[SIZE] = max(best[SIZE], len(fa) * len(fb))
            best[F_COUNT] = max(best[F_COUNT], sum(1 for x in fa for y in fb if x | y == N - 1))
            best[AHARONI] = max(best[AHARONI], sum(1 << popcount(x & y) for x in fa for y in fb))
    return best


@pytest.fixture(scope="module")
def oracle():
    return {n: brute_force(n) for n in (1, 2, 3)}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("objective", OBJECTIVES)
@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("seeded", [True, False])
def test_search_matches_brute_force(oracle, n, objective, backend, seeded):
    r = search(n, objective, seed_incumbents=seeded, backend=backend)
    assert r.exhausted
    assert r.best_value == oracle[n][objective]
    assert is_recovering(r.witness_pair.a, r.witness_pair.b)
    assert objective_value(r.witness_pair, objective) == r.best_value


@pytest.mark.parametrize("objective", OBJECTIVES)
def test_symmetry_reduction_is_exact(objective):
    full = search(3, objective, seed_incumbents=False, symmetry_depth=0)
    reduced = search(3, objective, seed_incumbents=False)
    assert full.best_value == reduced.best_value
    assert reduced.nodes <= full.nodes


def test_n4_values():
    assert search(4, SIZE).best_value == 16
    assert search(4, F_COUNT).best_value == 2
    assert search(4, AHARONI).best_value == 16


def test_monotone_in_n():
    prev = {o: 0 for o in OBJECTIVES}
    for n in range(1, 5):
        for o in OBJECTIVES:
            v = search(n, o).best_value
            assert v >= prev[o]
            prev[o] = v


def test_conjecture_range():
    rows = verify_conjecture_range(3)
    assert [r.max_size for r in rows] == [2, 4, 8]
    assert all(r.passes for r in rows)
    with pytest.raises(ValueError):
        verify_conjecture_range(5)


def test_backends_identical_on_n4():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    for o in OBJECTIVES:
        rs = [search(4, o, backend=b, seed_incumbents=False) for b in BACKENDS]
        assert len({(r.best_value, r.nodes, r.pruned) for r in rs}) == 1
        assert rs[0].witness_pair.same_families(rs[1].witness_pair)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_kernels_agree_on_random_states(n):
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    rng = random.Random(n)
    N = 1 << n
    tables = (conflict_table(n), weight_table(n, AHARONI), suffix_table(n, AHARONI), permutation_table(n))
    impls = [kernels.get(b) for b in BACKENDS]
    ctxs = [m.Context(n, *tables) for m in impls]
    for _ in range(40):
        fam = sorted(rng.sample(range(N), rng.randint(1, min(5, N))))
        states = [m.root_state(c) for m, c in zip(impls, ctxs)]
        mask = 0
        for a in fam:
            mask |= 1 << a
            states = [m.extend(c, s, mask, a) for m, c, s in zip(impls, ctxs, states)]
        v0, v1 = (int(s[0]) for s in states)
        assert v0 == v1
        assert [int(x) for x in states[0][1]] == [int(x) for x in states[1][1]]
        assert [int(x) for x in states[0][2]] == [int(x) for x in states[1][2]]
        extra = rng.choice([-1, fam[-1]])
        cl = [m.max_weight_clique(c, s, extra) for m, c, s in zip(impls, ctxs, states)]
        assert cl[0] == cl[1]
        canon = [m.is_canonical(c, fam) for m, c in zip(impls, ctxs)]
        assert canon[0] == canon[1]


def test_clique_is_compatible_family():
    # The returned clique against the A-family must itself be recovering.
    rng = random.Random(3)
    n, N = 4, 16
    m = kernels.get()
    ctx = m.Context(n, conflict_table(n), weight_table(n, SIZE), suffix_table(n, SIZE), permutation_table(n))
    for _ in range(30):
        fam = sorted(rng.sample(range(N), 3))
        state = m.root_state(ctx)
        mask = 0
        for a in fam:
            mask |= 1 << a
            state = m.extend(ctx, state, mask, a)
        _, clique, complete = m.max_weight_clique(ctx, state)
        assert complete
        bs = [b for b in range(N) if clique >> b & 1]
        if bs:
            assert naive_recovering(fam, bs)


def test_certificates_are_genuine():
    r = search(4, SIZE, seed_incumbents=False, record_certificates=100, certificate_seed=11)
    assert len(r.certificates) == 100
    for c in r.certificates:
        assert not naive_recovering(c.a_sets, c.b_sets)


def test_seed_pairs(hexad):
    seeds = seed_pairs(6)
    assert any(s.same_families(hexad) for s in seeds)
    assert all(is_recovering(s.a, s.b) for s in seeds)


def test_n6_budgeted_reaches_known_constructions():
    f = search(6, F_COUNT, SearchBudget(max_nodes=2000))
    assert f.best_value >= 3
    ah = search(6, AHARONI, SearchBudget(max_nodes=2000))
    assert ah.best_value >= 67
    assert not ah.exhausted


def test_time_limit_is_respected():
    r = search(6, SIZE, SearchBudget(time_limit=0.5))
    assert not r.exhausted
    assert r.elapsed < 5
    assert r.best_value >= 64


def test_parallel_matches_sequential():
    for o in OBJECTIVES:
        seq = search(4, o, seed_incumbents=False)
        par = search(4, o, seed_incumbents=False, threads=2)
        assert par.exhausted
        assert par.best_value == seq.best_value


def test_bad_arguments():
    with pytest.raises(ValueError):
        search(7, SIZE)
    with pytest.raises(ValueError):
        search(3, "volume")
    with pytest.raises(ValueError):
        kernels.get("fortran")


@pytest.mark.parametrize("n", [1, 2])
def test_conflict_table_against_predicate(n):
    N = 1 << n
    K = conflict_table(n).reshape(N, N, N)
    small = [c for r in (1, 2) for c in itertools.combinations(range(N), r)]
    for fa in small:
        for fb in small:
            predicted = any(int(K[p, q, x]) >> y & 1 for x in fa for y in fa for p in fb for q in fb)
            assert predicted == (not naive_recovering(fa, fb))


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    code = "from recpairs.search import BACKEND, search; print(BACKEND, search(3).best_value)"
    env = dict(os.environ, RECPAIRS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "8"]


@pytest.mark.parametrize("backend", BACKENDS)
def test_clique_kernel_honours_deadline(backend):
    import time

    n = 6
    m = kernels.get(backend)
    ctx = m.Context(n, conflict_table(n), weight_table(n, AHARONI), suffix_table(n, AHARONI), permutation_table(n))
    state = m.root_state(ctx)
    state = m.extend(ctx, state, 1, 0)
    state = m.extend(ctx, state, 0b1001, 3)
    t0 = time.perf_counter()
    value, clique, complete = m.max_weight_clique(ctx, state, 3, time.time() - 1)
    assert not complete
    assert time.perf_counter() - t0 < 1
    assert int(state[0]) & clique == clique
    bs = [b for b in range(1 << n) if clique >> b & 1]
    assert bs and naive_recovering([0, 3], bs)


def test_parallel_time_limit_is_global():
    r = search(6, AHARONI, SearchBudget(time_limit=1.0), threads=2)
    assert not r.exhausted
    assert r.elapsed < 10
    assert r.best_value >= 67
