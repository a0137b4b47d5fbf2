"""Precomputed conflict, weight and permutation tables for ground sets n <= 6."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

MAX_SEARCH_N = 6

SIZE = "size"
F_COUNT = "f"
AHARONI = "aharoni"
OBJECTIVES = (SIZE, F_COUNT, AHARONI)


def _pack_last_axis(rel: np.ndarray) -> np.ndarray:
    packed = np.packbits(rel, axis=-1, bitorder="little")
    pad = 8 - packed.shape[-1]
    if pad:
        packed = np.concatenate(
            [packed, np.zeros(packed.shape[:-1] + (pad,), dtype=np.uint8)], axis=-1
        )
    return np.ascontiguousarray(packed).view("<u8")[..., 0].astype(np.uint64)


@lru_cache(maxsize=None)
def conflict_table(n: int) -> np.ndarray:
    """Flat uint64 table K[(b*N + b2)*N + a], N = 2^n.

    Bit a2 of K[b, b2, a] is set iff A-sets a and a2 together break the
    recovering conditions against the B-sets b and b2 (in either role). For
    b == b2 only the first condition can fail. The relation is symmetric in
    (a, a2), so adding the set a to a family F is checked by K[b, b2, a] & F.
    """
    if not 1 <= n <= MAX_SEARCH_N:
        raise ValueError(f"search tables support 1 <= n <= {MAX_SEARCH_N}")
    N = 1 << n
    s = np.arange(N, dtype=np.int64)
    b = s[:, None, None, None]
    b2 = s[None, :, None, None]
    a = s[None, None, :, None]
    a2 = s[None, None, None, :]
    first = ((a & ~b) == (a2 & ~b2)) & (a != a2)
    second = ((b & ~a) == (b2 & ~a2)) & (b != b2)
    rel = first | second
    rel = rel | rel.transpose(0, 1, 3, 2) | rel.transpose(1, 0, 2, 3) | rel.transpose(1, 0, 3, 2)
    return _pack_last_axis(rel).reshape(-1)


@lru_cache(maxsize=None)
def weight_table(n: int, objective: str) -> np.ndarray:
    """Flat int64 W[a*N + b]: contribution of the cross pair (a, b) to the objective."""
    N = 1 << n
    s = np.arange(N, dtype=np.int64)
    a = s[:, None]
    b = s[None, :]
    if objective == SIZE:
        w = np.ones((N, N), dtype=np.int64)
    elif objective == F_COUNT:
        w = ((a | b) == N - 1).astype(np.int64)
    elif objective == AHARONI:
        inter = a & b
        bits = np.zeros_like(inter)
        for i in range(n):
            bits += (inter >> i) & 1
        w = np.left_shift(np.int64(1), bits)
    else:
        raise ValueError(f"unknown objective {objective!r}")
    return np.ascontiguousarray(w.reshape(-1))


@lru_cache(maxsize=None)
def suffix_table(n: int, objective: str) -> np.ndarray:
    """Flat int64 S[a*N + b] = sum of W[a'*N + b] over a' > a."""
    N = 1 << n
    w = weight_table(n, objective).reshape(N, N)
    rev = np.cumsum(w[::-1], axis=0)[::-1]
    out = np.zeros_like(w)
    out[:-1] = rev[1:]
    return np.ascontiguousarray(out.reshape(-1))


@lru_cache(maxsize=None)
def permutation_table(n: int) -> np.ndarray:
    """Flat int64 P[p*N + mask]: image of ``mask`` under the p-th permutation of [n]."""
    N = 1 << n
    perms = list(itertools.permutations(range(n)))
    table = np.zeros((len(perms), N), dtype=np.int64)
    for p, perm in enumerate(perms):
        for mask in range(N):
            img = 0
            for i in range(n):
                if mask >> i & 1:
                    img |= 1 << perm[i]
            table[p, mask] = img
    return np.ascontiguousarray(table.reshape(-1))
