# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels, behaviourally identical to ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from posix.time cimport clock_gettime, timespec, CLOCK_REALTIME

cnp.import_array()

BACKEND = "cython"
cdef uint64_t _CLOCK_INTERVAL = 4096
CLOCK_INTERVAL = _CLOCK_INTERVAL

cdef extern from *:
    """
    static inline int rp_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int rp_ctz(unsigned long long x) nogil


cdef class Context:
    cdef public int n, N, nperm
    cdef public object K_arr, W_arr, S_arr, P_arr
    cdef const uint64_t[::1] K
    cdef const int64_t[::1] W
    cdef const int64_t[::1] S
    cdef const int64_t[::1] P

    def __init__(self, n, conflicts, weights, suffix, perms):
        self.n = n
        self.N = 1 << n
        self.K_arr = np.ascontiguousarray(conflicts, dtype=np.uint64)
        self.W_arr = np.ascontiguousarray(weights, dtype=np.int64)
        self.S_arr = np.ascontiguousarray(suffix, dtype=np.int64)
        self.P_arr = np.ascontiguousarray(perms, dtype=np.int64)
        self.K = self.K_arr
        self.W = self.W_arr
        self.S = self.S_arr
        self.P = self.P_arr
        self.nperm = self.P_arr.shape[0] // self.N


cdef inline uint64_t _full(int N) noexcept:
    if N >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << N) - 1


def root_state(Context ctx):
    cdef int N = ctx.N
    cdef uint64_t full = _full(N)
    adj = np.empty(N, dtype=np.uint64)
    cdef uint64_t[::1] av = adj
    cdef int b
    for b in range(N):
        av[b] = full & ~((<uint64_t>1) << b)
    return int(full), adj, np.zeros(N, dtype=np.int64)


def extend(Context ctx, state, fam_obj, int a):
    cdef uint64_t valid = <uint64_t>int(state[0])
    cdef const uint64_t[::1] adj = state[1]
    cdef const int64_t[::1] w = state[2]
    cdef uint64_t fam = <uint64_t>int(fam_obj)
    cdef int N = ctx.N
    cdef const uint64_t[::1] K = ctx.K
    cdef const int64_t[::1] W = ctx.W
    new_adj_arr = np.array(state[1], dtype=np.uint64, copy=True)
    new_w_arr = np.empty(N, dtype=np.int64)
    cdef uint64_t[::1] new_adj = new_adj_arr
    cdef int64_t[::1] new_w = new_w_arr
    cdef uint64_t new_valid = valid, nb, m, low
    cdef Py_ssize_t base
    cdef int b, b2
    with nogil:
        for b in range(N):
            if not ((valid >> b) & 1):
                continue
            base = <Py_ssize_t>b * N * N
            if K[base + <Py_ssize_t>b * N + a] & fam:
                new_valid &= ~((<uint64_t>1) << b)
                continue
            nb = adj[b] & valid
            m = nb
            while m:
                low = m & (~m + 1)
                b2 = rp_ctz(m)
                if K[base + <Py_ssize_t>b2 * N + a] & fam:
                    nb &= ~low
                m ^= low
            new_adj[b] = nb
        for b in range(N):
            new_w[b] = w[b] + W[<Py_ssize_t>a * N + b]
    return int(new_valid), new_adj_arr, new_w_arr


cdef int64_t _mass(uint64_t mask, int64_t* weights) noexcept nogil:
    cdef int64_t total = 0
    while mask:
        total += weights[rp_ctz(mask)]
        mask &= mask - 1
    return total


cdef struct Limit:
    double deadline
    uint64_t steps
    bint aborted


cdef double _now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_REALTIME, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef void _expand(int64_t cur_w, uint64_t cur_set, uint64_t cand, int64_t cand_w,
                  uint64_t valid, const uint64_t* adj, int64_t* weights,
                  int64_t* best_w, uint64_t* best_set, Limit* lim) noexcept nogil:
    cdef uint64_t low, nxt
    cdef int v
    if lim.aborted:
        return
    if lim.deadline > 0:
        lim.steps += 1
        if lim.steps % _CLOCK_INTERVAL == 0 and _now() > lim.deadline:
            lim.aborted = True
            return
    if cur_w > best_w[0]:
        best_w[0] = cur_w
        best_set[0] = cur_set
    while cand:
        if cur_w + cand_w <= best_w[0]:
            return
        low = cand & (~cand + 1)
        v = rp_ctz(cand)
        nxt = cand & adj[v] & valid
        _expand(cur_w + weights[v], cur_set | low, nxt, _mass(nxt, weights),
                valid, adj, weights, best_w, best_set, lim)
        if lim.aborted:
            return
        cand ^= low
        cand_w -= weights[v]


def max_weight_clique(Context ctx, state, int extra_row=-1, double deadline=0.0):
    cdef uint64_t valid = <uint64_t>int(state[0])
    cdef const uint64_t[::1] adj = state[1]
    cdef const int64_t[::1] w = state[2]
    cdef int N = ctx.N
    cdef int64_t weights[64]
    cdef uint64_t adj_c[64]
    cdef int b
    for b in range(N):
        weights[b] = w[b]
        adj_c[b] = adj[b]
        if extra_row >= 0:
            weights[b] += ctx.S[<Py_ssize_t>extra_row * N + b]
    cdef int64_t best_w = 0
    cdef uint64_t best_set = 0
    cdef Limit lim
    lim.deadline = deadline
    lim.steps = 0
    lim.aborted = False
    with nogil:
        _expand(0, 0, valid, _mass(valid, weights), valid, adj_c, weights, &best_w, &best_set, &lim)
    return int(best_w), int(best_set), not lim.aborted


def is_canonical(Context ctx, fam_sorted):
    cdef int k = len(fam_sorted)
    cdef int N = ctx.N
    cdef int64_t fam[64]
    cdef int64_t img[64]
    cdef int64_t x
    cdef int i, j, p
    cdef const int64_t[::1] P = ctx.P
    cdef bint result = True
    for i in range(k):
        fam[i] = fam_sorted[i]
    with nogil:
        for p in range(1, ctx.nperm):
            for i in range(k):
                x = P[<Py_ssize_t>p * N + fam[i]]
                j = i
                while j > 0 and img[j - 1] > x:
                    img[j] = img[j - 1]
                    j -= 1
                img[j] = x
            for i in range(k):
                if img[i] != fam[i]:
                    if img[i] < fam[i]:
                        result = False
                    break
            if not result:
                break
    return result
