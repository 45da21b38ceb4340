"""Pure-Python branch-and-bound kernel for minimum set cover over vertices.

Fallback twin of the compiled ``_domcore`` extension: both implement the
exact same search (same branching rule, tie-breaks and node accounting), so
certificates are identical whichever backend is active.

The instance is a covering problem: pick a minimum vertex set D such that
``D & cands[u] != 0`` for every vertex u.  ``cands[u]`` is the closed
neighborhood for plain domination and the open neighborhood for total
domination; for symmetric graphs ``cands[v]`` is then also exactly the set
of vertices that choosing v covers.
"""

from __future__ import annotations

STATUS_OK = 0
STATUS_BUDGET = 1

BACKEND_NAME = "pure-python"


def solve_cover(cands: list[int], budget: int) -> tuple[int, int, int, int]:
    """Exact minimum cover of an instance with every cands[u] nonempty.

    Returns (status, size, chosen_mask, nodes_explored).  Search order:
    greedy upper bound, then depth-first branch and bound on the uncovered
    vertex with fewest available candidates, trying candidates in ascending
    index order and forbidding each tried candidate in later branches.
    The lower bound is a greedy maximal family of uncovered vertices with
    pairwise disjoint candidate sets.
    """
    n = len(cands)
    if n == 0:
        return (STATUS_OK, 0, 0, 0)
    full = (1 << n) - 1

    covered = 0
    best_mask = 0
    best_size = 0
    while covered != full:
        best_v = -1
        best_gain = -1
        for v in range(n):
            gain = (cands[v] & ~covered).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_v = v
        covered |= cands[best_v]
        best_mask |= 1 << best_v
        best_size += 1

    best = [best_size, best_mask]
    nodes = 0
    exceeded = False

    def dfs(chosen: int, size: int, covered: int, forbidden: int) -> None:
        nonlocal nodes, exceeded
        nodes += 1
        if nodes > budget:
            exceeded = True
            return
        if covered == full:
            # strictly better than the incumbent: weaker solutions were pruned
            best[0] = size
            best[1] = chosen
            return
        lb = 0
        used = 0
        pick = -1
        pick_count = n + 1
        rem = full & ~covered
        while rem:
            low = rem & -rem
            u = low.bit_length() - 1
            rem ^= low
            cu = cands[u] & ~forbidden
            if cu == 0:
                return  # u can no longer be covered on this branch
            if cu & used == 0:
                lb += 1
                used |= cu
            c = cu.bit_count()
            if c < pick_count:
                pick_count = c
                pick = u
        if size + lb >= best[0]:
            return
        avail = cands[pick] & ~forbidden
        fb = forbidden
        while avail:
            low = avail & -avail
            w = low.bit_length() - 1
            avail ^= low
            dfs(chosen | low, size + 1, covered | cands[w], fb)
            if exceeded:
                return
            fb |= low

    dfs(0, 0, 0, 0)
    if exceeded:
        return (STATUS_BUDGET, 0, 0, nodes)
    return (STATUS_OK, best[0], best[1], nodes)
