# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled depth-first search over vertex orders.

Same contract, pruning rules and candidate order as ``_pysearch.dfs``.
"""
from libc.stdlib cimport calloc, free
from libc.stdint cimport uint64_t

cdef enum:
    KIND_A = 1
    KIND_B = 2
    COMPLETE = 0
    STOPPED = 1
    EXHAUSTED = 2


cdef struct State:
    int n
    int W
    bint stick
    unsigned char *adj      # n*n byte matrix
    uint64_t *nbr           # n*W bitset rows
    unsigned char *kind
    unsigned char *constrained
    unsigned char *blocker
    int *pos
    int *order
    int *missing
    int *pcount
    unsigned char *isopen
    uint64_t *free_set      # W words
    uint64_t *must          # n*W
    uint64_t *remaining     # W
    int *cands
    int depth
    long long nodes
    long long prunes
    long long budget


cdef inline int back_pos(State *s, int v) nogil:
    cdef int q
    cdef unsigned char *row = s.adj + v * s.n
    for q in range(s.depth):
        if row[s.order[q]]:
            return q
    return s.depth


cdef bint try_place(State *s, int v) nogil:
    cdef int n = s.n
    cdef int p = s.depth
    cdef int lo, w, q, u
    cdef unsigned char *row = s.adj + v * n
    if s.stick and s.kind[v] == KIND_A and s.missing[v] != 0:
        return False
    if s.constrained[v]:
        lo = back_pos(s, v)
        for q in range(lo, p):
            u = s.order[q]
            if not row[u] and s.isopen[u] and s.blocker[u]:
                return False
    s.pos[v] = p
    s.order[p] = v
    s.depth = p + 1
    s.free_set[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
    for w in range(n):
        if row[w]:
            s.missing[w] -= 1
            s.pcount[w] += 1
            if s.missing[w] == 0 and s.pos[w] >= 0:
                s.isopen[w] = 0
    s.isopen[v] = 1 if s.missing[v] > 0 else 0
    return True


cdef void undo(State *s, int v) nogil:
    cdef int n = s.n
    cdef int w
    cdef unsigned char *row = s.adj + v * n
    s.depth -= 1
    s.pos[v] = -1
    s.isopen[v] = 0
    s.free_set[v >> 6] |= (<uint64_t> 1) << (v & 63)
    for w in range(n):
        if row[w]:
            s.missing[w] += 1
            s.pcount[w] -= 1
            if s.pos[w] >= 0 and s.missing[w] > 0:
                s.isopen[w] = 1


cdef bint deadlocked(State *s) nogil:
    cdef int n = s.n
    cdef int W = s.W
    cdef int a, q, u, k, lo
    cdef bint any_left, progress
    cdef uint64_t *req
    cdef uint64_t ready
    cdef unsigned char *row
    for a in range(n):
        req = s.must + a * W
        for k in range(W):
            req[k] = 0
        if s.pos[a] >= 0 or not s.constrained[a]:
            continue
        row = s.adj + a * n
        if s.stick:
            for k in range(W):
                req[k] = s.nbr[a * W + k] & s.free_set[k]
        if s.pcount[a] > 0:
            lo = back_pos(s, a)
            for q in range(lo, s.depth):
                u = s.order[q]
                if not row[u] and s.isopen[u] and s.blocker[u]:
                    for k in range(W):
                        req[k] |= s.nbr[u * W + k] & s.free_set[k]
    for k in range(W):
        s.remaining[k] = s.free_set[k]
    while True:
        any_left = False
        progress = False
        for a in range(n):
            if not (s.remaining[a >> 6] >> (a & 63)) & 1:
                continue
            req = s.must + a * W
            ready = 0
            for k in range(W):
                ready |= req[k] & s.remaining[k]
            if ready == 0:
                s.remaining[a >> 6] &= ~((<uint64_t> 1) << (a & 63))
                progress = True
            else:
                any_left = True
        if not any_left:
            return False
        if not progress:
            return True


cdef int fill_candidates(State *s, int *out) nogil:
    # unplaced vertices by (-placed-neighbour count, id); stable insertion
    cdef int k = 0
    cdef int v, j, c
    for v in range(s.n):
        if s.pos[v] >= 0:
            continue
        c = s.pcount[v]
        j = k
        while j > 0 and s.pcount[out[j - 1]] < c:
            out[j] = out[j - 1]
            j -= 1
        out[j] = v
        k += 1
    return k


cdef int rec(State *s, object visit) except -1:
    cdef int k, i, v, r
    cdef int *cands
    if s.depth == s.n:
        if visit([s.order[i] for i in range(s.n)]):
            return STOPPED
        return COMPLETE
    cands = s.cands + s.depth * s.n
    k = fill_candidates(s, cands)
    for i in range(k):
        v = cands[i]
        if not try_place(s, v):
            s.prunes += 1
            continue
        if deadlocked(s):
            undo(s, v)
            s.prunes += 1
            continue
        s.nodes += 1
        if s.nodes > s.budget:
            undo(s, v)
            return EXHAUSTED
        r = rec(s, visit)
        undo(s, v)
        if r != COMPLETE:
            return r
    return COMPLETE


def dfs(int n, adj, kinds, bint stick, prefix, budget, visit):
    cdef State s
    cdef int v, w, status
    cdef int N = n if n > 0 else 1
    s.n = n
    s.W = (N + 63) // 64
    s.stick = stick
    s.depth = 0
    s.nodes = 0
    s.prunes = 0
    s.budget = min(int(budget), 1 << 62)
    s.adj = <unsigned char *> calloc(N * N, 1)
    s.nbr = <uint64_t *> calloc(N * s.W, sizeof(uint64_t))
    s.kind = <unsigned char *> calloc(N, 1)
    s.constrained = <unsigned char *> calloc(N, 1)
    s.blocker = <unsigned char *> calloc(N, 1)
    s.pos = <int *> calloc(N, sizeof(int))
    s.order = <int *> calloc(N, sizeof(int))
    s.missing = <int *> calloc(N, sizeof(int))
    s.pcount = <int *> calloc(N, sizeof(int))
    s.isopen = <unsigned char *> calloc(N, 1)
    s.free_set = <uint64_t *> calloc(s.W, sizeof(uint64_t))
    s.must = <uint64_t *> calloc(N * s.W, sizeof(uint64_t))
    s.remaining = <uint64_t *> calloc(s.W, sizeof(uint64_t))
    s.cands = <int *> calloc(N * (N + 1), sizeof(int))
    try:
        for v in range(n):
            s.kind[v] = kinds[v]
            if stick:
                s.constrained[v] = kinds[v] == KIND_A
                s.blocker[v] = kinds[v] == KIND_B
            else:
                s.constrained[v] = 1
                s.blocker[v] = 1
            s.pos[v] = -1
            s.free_set[v >> 6] |= (<uint64_t> 1) << (v & 63)
            m = adj[v]
            for w in range(n):
                if (m >> w) & 1:
                    s.adj[v * n + w] = 1
                    s.nbr[v * s.W + (w >> 6)] |= (<uint64_t> 1) << (w & 63)
                    s.missing[v] += 1
        for v in prefix:
            if not try_place(&s, v):
                return COMPLETE, s.nodes, s.prunes + 1
        status = rec(&s, visit)
        return status, s.nodes, s.prunes
    finally:
        free(s.adj)
        free(s.nbr)
        free(s.kind)
        free(s.constrained)
        free(s.blocker)
        free(s.pos)
        free(s.order)
        free(s.missing)
        free(s.pcount)
        free(s.isopen)
        free(s.free_set)
        free(s.must)
        free(s.remaining)
        free(s.cands)
