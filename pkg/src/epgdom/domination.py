"""Exact minimum dominating / total dominating sets with certificates.

The branch-and-bound core is the compiled ``_domcore`` extension when it
built successfully, with ``_domcore_py`` as a pure-Python fallback chosen
at import time.  Both implement the identical search, so results (including
witnesses and node counts) do not depend on the backend.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .epgraph import EpGraph, connected_components, iter_bits
from .errors import ResourceLimit, TooLarge

if os.environ.get("EPGDOM_FORCE_PURE"):
    from . import _domcore_py as _kernel
else:
    try:
        from . import _domcore as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _domcore_py as _kernel

DEFAULT_NODE_BUDGET = 10 ** 8
DEFAULT_ORACLE_MAX_VERTICES = 20


def solver_backend() -> str:
    """Name of the active search kernel ("compiled" or "pure-python")."""
    return _kernel.BACKEND_NAME


def default_budget() -> int:
    """Node budget, overridable through EPGDOM_BUDGET."""
    raw = os.environ.get("EPGDOM_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


class Kind(str, Enum):
    DOMINATING = "dominating"
    TOTAL = "total_dominating"


class Method(str, Enum):
    BRANCH_AND_BOUND = "branch_and_bound"
    BRUTE_FORCE = "brute_force"


@dataclass(frozen=True)
class DominationCertificate:
    kind: Kind
    status: str                            # "optimal" | "none_exists"
    size: int | None
    witness: tuple[int, ...] | None        # vertex indices, sorted
    witness_labels: tuple[int, ...] | None  # group-element labels, sorted
    nodes_explored: int
    method: Method

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind.value, "status": self.status}
        if self.status == "optimal":
            out["size"] = self.size
            out["witness"] = sorted(self.witness_labels or ())
        out["nodes_explored"] = self.nodes_explored
        out["method"] = self.method.value
        return out


def check_domination(graph: EpGraph, vertices: int, kind: Kind) -> bool:
    """Dominating: every vertex is in the set or adjacent to it.
    Total dominating: every vertex, members included, has a neighbor in it."""
    if kind is Kind.DOMINATING:
        return all(
            vertices >> v & 1 or graph.adj[v] & vertices for v in range(graph.n)
        )
    return all(graph.adj[v] & vertices for v in range(graph.n))


def _certificate(graph: EpGraph, kind: Kind, size: int | None, vertex_bits: int | None,
                 nodes: int, method: Method) -> DominationCertificate:
    if vertex_bits is None:
        return DominationCertificate(
            kind=kind, status="none_exists", size=None, witness=None,
            witness_labels=None, nodes_explored=nodes, method=method,
        )
    verts = tuple(iter_bits(vertex_bits))
    labels = tuple(sorted(graph.labels[v] for v in verts))
    return DominationCertificate(
        kind=kind, status="optimal", size=size, witness=verts,
        witness_labels=labels, nodes_explored=nodes, method=method,
    )


def _candidate_rows(graph: EpGraph, kind: Kind) -> list[int]:
    if kind is Kind.DOMINATING:
        return [graph.adj[v] | (1 << v) for v in range(graph.n)]
    return list(graph.adj)


def solve_minimum(graph: EpGraph, kind: Kind,
                  budget: int | None = None) -> DominationCertificate:
    """Optimal certificate by branch and bound, solved per component.

    Both problems are component-additive, so each connected component is
    searched independently and the sizes summed.  Total domination does not
    exist exactly when some vertex is isolated.  The empty graph is
    vacuously dominated by the empty set.
    """
    if budget is None:
        budget = default_budget()
    if kind is Kind.TOTAL and any(row == 0 for row in graph.adj):
        return _certificate(graph, kind, None, None, 0, Method.BRANCH_AND_BOUND)
    cands = _candidate_rows(graph, kind)
    total_size = 0
    witness_bits = 0
    total_nodes = 0
    for comp in connected_components(graph):
        verts = list(iter_bits(comp))
        pos = {v: i for i, v in enumerate(verts)}
        local = []
        for v in verts:
            row = 0
            for u in iter_bits(cands[v]):
                row |= 1 << pos[u]
            local.append(row)
        status, size, mask, nodes = _kernel.solve_cover(local, budget - total_nodes)
        total_nodes += nodes
        if status != 0:
            raise ResourceLimit(budget)
        total_size += size
        for i in iter_bits(mask):
            witness_bits |= 1 << verts[i]
    return _certificate(graph, kind, total_size, witness_bits, total_nodes,
                        Method.BRANCH_AND_BOUND)


def brute_force_minimum(graph: EpGraph, kind: Kind,
                        max_vertices: int = DEFAULT_ORACLE_MAX_VERTICES) -> DominationCertificate:
    """Subset-enumeration oracle: try every vertex set in increasing size
    order (lexicographic within a size).  Kept independent of the branch
    and bound so the two can check each other."""
    n = graph.n
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds oracle limit {max_vertices}")
    nodes = 1
    if not check_domination(graph, (1 << n) - 1, kind):
        # the predicate is monotone, so if all vertices fail nothing can work
        return _certificate(graph, kind, None, None, nodes, Method.BRUTE_FORCE)
    for size in range(n + 1):
        for combo in combinations(range(n), size):
            nodes += 1
            bits = 0
            for v in combo:
                bits |= 1 << v
            if check_domination(graph, bits, kind):
                return _certificate(graph, kind, size, bits, nodes,
                                    Method.BRUTE_FORCE)
    raise AssertionError("unreachable: the full vertex set was accepted above")
