"""Pure-Python search kernels; the reference the compiled module must match.

A search state is ``(valid, adj, w)``: ``valid`` is a bitmask of B-sets that
are compatible on their own with the current A-family, ``adj[b]`` the mask of
B-sets compatible with ``b``, and ``w[b]`` the objective weight of ``b``.
"""

from __future__ import annotations

import time

BACKEND = "python"
CLOCK_INTERVAL = 4096


class _Abort(Exception):
    pass


class Context:
    def __init__(self, n, conflicts, weights, suffix, perms):
        self.n = n
        self.N = 1 << n
        self.K = [int(x) for x in conflicts]
        self.W = [int(x) for x in weights]
        self.S = [int(x) for x in suffix]
        self.P = [int(x) for x in perms]
        self.nperm = len(self.P) // self.N


def root_state(ctx):
    N = ctx.N
    full = (1 << N) - 1
    return full, [full & ~(1 << b) for b in range(N)], [0] * N


def extend(ctx, state, fam, a):
    """State after adding the A-set ``a``; ``fam`` already contains ``a``."""
    valid, adj, w = state
    N, K, W = ctx.N, ctx.K, ctx.W
    new_valid = valid
    new_adj = list(adj)
    row = a * N
    for b in range(N):
        if not valid >> b & 1:
            continue
        base = b * N * N
        if K[base + b * N + a] & fam:
            new_valid &= ~(1 << b)
            continue
        nb = adj[b] & valid
        m = nb
        while m:
            low = m & -m
            b2 = low.bit_length() - 1
            if K[base + b2 * N + a] & fam:
                nb &= ~low
            m ^= low
        new_adj[b] = nb
    new_w = [w[b] + W[row + b] for b in range(N)]
    return new_valid, new_adj, new_w


def max_weight_clique(ctx, state, extra_row=-1, deadline=0.0):
    """(best weight, clique mask, complete) over valid vertices, first-found on ties.

    With ``deadline > 0`` (a ``time.time()`` value) the clock is read every
    4096 expansions; past it the search stops with ``complete`` False and the
    best clique so far, which is valid but not necessarily maximum.
    """
    valid, adj, w = state
    N = ctx.N
    if extra_row >= 0:
        S = ctx.S
        base = extra_row * N
        weights = [w[b] + S[base + b] for b in range(N)]
    else:
        weights = w
    best = [0, 0]
    steps = [0]

    def mass(mask):
        total = 0
        while mask:
            low = mask & -mask
            total += weights[low.bit_length() - 1]
            mask ^= low
        return total

    def expand(cur_w, cur_set, cand, cand_w):
        if deadline > 0:
            steps[0] += 1
            if steps[0] % CLOCK_INTERVAL == 0 and time.time() > deadline:
                raise _Abort
        if cur_w > best[0]:
            best[0], best[1] = cur_w, cur_set
        while cand:
            if cur_w + cand_w <= best[0]:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            nxt = cand & adj[v] & valid
            expand(cur_w + weights[v], cur_set | low, nxt, mass(nxt))
            cand ^= low
            cand_w -= weights[v]

    try:
        expand(0, 0, valid, mass(valid))
    except _Abort:
        return best[0], best[1], False
    return best[0], best[1], True


def is_canonical(ctx, fam_sorted):
    """Whether ``fam_sorted`` is lexicographically minimal in its orbit."""
    N, P = ctx.N, ctx.P
    for p in range(1, ctx.nperm):
        base = p * N
        img = sorted(P[base + x] for x in fam_sorted)
        if img < fam_sorted:
            return False
    return True
