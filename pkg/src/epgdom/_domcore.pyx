# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled branch-and-bound kernel over word-packed bitsets.

Exact twin of ``_domcore_py.solve_cover``: identical branching rule,
tie-breaks and node accounting, so both backends return byte-identical
certificates.  Masks cross the boundary as Python ints and are unpacked
into arrays of 64-bit words internally.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

cdef extern from *:
    """
    static inline int epg_popcount64(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int epg_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int epg_popcount64(unsigned long long x) nogil
    int epg_ctz64(unsigned long long x) nogil

ctypedef unsigned long long u64

STATUS_OK = 0
STATUS_BUDGET = 1

BACKEND_NAME = "compiled"


cdef struct Search:
    int n
    int nw
    u64 *cands        # n rows of nw words
    u64 *full         # nw
    u64 *covered_lv   # (n + 2) level buffers
    u64 *forbid_lv
    u64 *avail_lv
    u64 *chosen_path  # nw, bits along the current path
    u64 *best_mask    # nw
    u64 *used         # nw scratch (valid only between recursive calls)
    u64 *cu           # nw scratch
    int best_size
    long long nodes
    long long budget
    bint exceeded


cdef void _dfs(Search *s, int level, int size) noexcept nogil:
    cdef int nw = s.nw
    cdef u64 *covered = s.covered_lv + level * nw
    cdef u64 *forbid = s.forbid_lv + level * nw
    cdef u64 *avail = s.avail_lv + level * nw
    cdef u64 *child_cov
    cdef u64 *child_forb
    cdef u64 *crow
    cdef int w, u, b, vtx, c, lb, pick, pick_count
    cdef u64 word, cw
    cdef bint flag, disjoint, zero

    s.nodes += 1
    if s.nodes > s.budget:
        s.exceeded = True
        return

    flag = True
    for w in range(nw):
        if covered[w] != s.full[w]:
            flag = False
            break
    if flag:
        s.best_size = size
        memcpy(s.best_mask, s.chosen_path, nw * sizeof(u64))
        return

    # one pass over uncovered vertices: feasibility, disjoint-family lower
    # bound, and min-candidate branching vertex (ties to the lowest index)
    lb = 0
    pick = -1
    pick_count = s.n + 1
    for w in range(nw):
        s.used[w] = 0
    for w in range(nw):
        word = s.full[w] & ~covered[w]
        while word:
            b = epg_ctz64(word)
            word &= word - 1
            u = (w << 6) + b
            crow = s.cands + u * nw
            c = 0
            zero = True
            disjoint = True
            for vtx in range(nw):
                cw = crow[vtx] & ~forbid[vtx]
                s.cu[vtx] = cw
                if cw:
                    zero = False
                    c += epg_popcount64(cw)
                    if cw & s.used[vtx]:
                        disjoint = False
            if zero:
                return  # u can no longer be covered on this branch
            if disjoint:
                lb += 1
                for vtx in range(nw):
                    s.used[vtx] |= s.cu[vtx]
            if c < pick_count:
                pick_count = c
                pick = u
    if size + lb >= s.best_size:
        return

    crow = s.cands + pick * nw
    for w in range(nw):
        avail[w] = crow[w] & ~forbid[w]
    child_cov = s.covered_lv + (level + 1) * nw
    child_forb = s.forbid_lv + (level + 1) * nw
    for w in range(nw):
        word = avail[w]
        while word:
            b = epg_ctz64(word)
            word &= word - 1
            vtx = (w << 6) + b
            crow = s.cands + vtx * nw
            for u in range(nw):
                child_cov[u] = covered[u] | crow[u]
            memcpy(child_forb, forbid, nw * sizeof(u64))
            s.chosen_path[w] |= (<u64>1) << b
            _dfs(s, level + 1, size + 1)
            s.chosen_path[w] &= ~((<u64>1) << b)
            if s.exceeded:
                return
            forbid[w] |= (<u64>1) << b


def solve_cover(cands, budget):
    """Exact minimum cover; see the pure-Python twin for the contract.

    Returns (status, size, chosen_mask, nodes_explored).
    """
    cdef int n = len(cands)
    if n == 0:
        return (STATUS_OK, 0, 0, 0)
    cdef int nw = (n + 63) >> 6
    cdef Search s
    cdef int lv = n + 2
    s.n = n
    s.nw = nw
    s.nodes = 0
    s.exceeded = False
    s.budget = min(int(budget), (1 << 62))
    s.cands = <u64 *> calloc(n * nw, sizeof(u64))
    s.full = <u64 *> calloc(nw, sizeof(u64))
    s.covered_lv = <u64 *> calloc(lv * nw, sizeof(u64))
    s.forbid_lv = <u64 *> calloc(lv * nw, sizeof(u64))
    s.avail_lv = <u64 *> calloc(lv * nw, sizeof(u64))
    s.chosen_path = <u64 *> calloc(nw, sizeof(u64))
    s.best_mask = <u64 *> calloc(nw, sizeof(u64))
    s.used = <u64 *> calloc(nw, sizeof(u64))
    s.cu = <u64 *> calloc(nw, sizeof(u64))
    if (s.cands is NULL or s.full is NULL or s.covered_lv is NULL
            or s.forbid_lv is NULL or s.avail_lv is NULL
            or s.chosen_path is NULL or s.best_mask is NULL
            or s.used is NULL or s.cu is NULL):
        _free_search(&s)
        raise MemoryError

    cdef int i, w, v, b
    cdef object mask
    try:
        for i in range(n):
            mask = cands[i]
            for w in range(nw):
                s.cands[i * nw + w] = <u64> ((mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        for v in range(n):
            s.full[v >> 6] |= (<u64>1) << (v & 63)

        _greedy(&s)
        _dfs(&s, 0, 0)

        if s.exceeded:
            return (STATUS_BUDGET, 0, 0, int(s.nodes))
        mask = 0
        for w in range(nw):
            mask |= int(s.best_mask[w]) << (64 * w)
        return (STATUS_OK, int(s.best_size), mask, int(s.nodes))
    finally:
        _free_search(&s)


cdef void _greedy(Search *s) noexcept nogil:
    """Initial upper bound: repeatedly take the vertex covering the most
    still-uncovered vertices, lowest index on ties."""
    cdef int nw = s.nw
    cdef u64 *covered = s.used   # reuse scratch; cleared below
    cdef int v, w, gain, best_v, best_gain
    cdef bint done
    cdef u64 *crow
    for w in range(nw):
        covered[w] = 0
        s.best_mask[w] = 0
    s.best_size = 0
    while True:
        done = True
        for w in range(nw):
            if covered[w] != s.full[w]:
                done = False
                break
        if done:
            break
        best_v = -1
        best_gain = -1
        for v in range(s.n):
            crow = s.cands + v * nw
            gain = 0
            for w in range(nw):
                gain += epg_popcount64(crow[w] & ~covered[w])
            if gain > best_gain:
                best_gain = gain
                best_v = v
        crow = s.cands + best_v * nw
        for w in range(nw):
            covered[w] |= crow[w]
        s.best_mask[best_v >> 6] |= (<u64>1) << (best_v & 63)
        s.best_size += 1
    for w in range(nw):
        covered[w] = 0


cdef void _free_search(Search *s) noexcept:
    free(s.cands)
    free(s.full)
    free(s.covered_lv)
    free(s.forbid_lv)
    free(s.avail_lv)
    free(s.chosen_path)
    free(s.best_mask)
    free(s.used)
    free(s.cu)
