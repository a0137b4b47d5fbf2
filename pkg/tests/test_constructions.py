import itertools
import random

import pytest

from recpairs.constructions import (
    UnverifiedInput,
    canonical_pair,
    power,
    product,
    random_recovering_pair,
    submasks,
    swap_and_multiply,
)
from recpairs.setcore import RecoveringPair, is_recovering, naive_recovering, pair_size
from recpairs.stats import aharoni_sum, count_full_union_solutions


def test_submasks():
    assert submasks(0b101) == [0, 1, 4, 5]
    assert submasks(0) == [0]


@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_pairs_reach_2n(n):
    for k in range(n + 1):
        p = canonical_pair(n, (1 << k) - 1)
        assert pair_size(p) == 2**n
        assert is_recovering(p.a, p.b)


def test_canonical_pair_guards():
    with pytest.raises(ValueError):
        canonical_pair(3, 0b1000)
    with pytest.raises(ValueError):
        canonical_pair(50, 0)


def test_hexad_sets(hexad):
    assert hexad.a.as_lists() == [[3, 4, 5, 6], [1, 2, 5, 6], [1, 2, 3, 4]]
    assert hexad.b.as_lists() == [[1, 4, 5, 6], [1, 2, 3, 6], [2, 3, 4, 5]]
    assert naive_recovering(hexad.a.members, hexad.b.members)


def test_counterexample(counterexample):
    assert counterexample.verified
    assert 0 in counterexample.a and 0 in counterexample.b
    assert aharoni_sum(counterexample) == 67


def test_product_requires_verified(hexad):
    raw = RecoveringPair(hexad.a, hexad.b)
    with pytest.raises(UnverifiedInput):
        product(raw, hexad)
    with pytest.raises(UnverifiedInput):
        power(raw, 2)
    with pytest.raises(ValueError):
        power(hexad, 0)


def test_hexad_powers(hexad):
    sq = power(hexad, 2)
    assert sq.n == 12
    assert pair_size(sq) == 81
    assert is_recovering(sq.a, sq.b)
    assert count_full_union_solutions(sq) == 9
    cube = power(hexad, 3)
    assert cube.n == 18
    assert pair_size(cube) == 729
    assert count_full_union_solutions(cube) == 27


def test_swap_and_multiply(hexad):
    p = swap_and_multiply(canonical_pair(3, 0b001))
    assert len(p.a) == len(p.b) == 8
    assert is_recovering(p.a, p.b)


def test_product_multiplicative_statistics():
    rng = random.Random(7)
    pairs = [random_recovering_pair(rng, n_max=3) for _ in range(12)]
    for p, q in itertools.combinations(pairs, 2):
        r = product(p, q)
        assert r.n == p.n + q.n
        assert is_recovering(r.a, r.b)
        assert pair_size(r) == pair_size(p) * pair_size(q)
        assert aharoni_sum(r) == aharoni_sum(p) * aharoni_sum(q)
        assert count_full_union_solutions(r) == count_full_union_solutions(p) * count_full_union_solutions(q)


def test_random_pairs_are_recovering(random_pairs):
    for p in random_pairs[:100]:
        assert p.verified and naive_recovering(p.a.members, p.b.members)
