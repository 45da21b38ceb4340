"""Enhanced power graphs and their star / proper variants.

Vertices carry group-element labels; adjacency is stored as one Python-int
bitmask per vertex, which keeps neighborhood algebra (and the domination
solver) allocation-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ModeError, NotAPGroup
from .groups import (
    FiniteGroup,
    NilpotentProfile,
    SylowClass,
    _factorize,
    center,
    cyclic_subgroup,
    maximal_cyclic_subgroups,
    nilpotent_profile,
    p_part,
)


class Mode(str, Enum):
    FULL = "full"
    STAR = "star"
    PROPER = "proper"


def iter_bits(mask: int):
    """Yield set-bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class EpGraph:
    mode: Mode
    labels: tuple[int, ...]  # vertex -> group element index
    adj: tuple[int, ...]     # symmetric, irreflexive bitmask rows
    source: str

    @property
    def n(self) -> int:
        return len(self.labels)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) vertex-index pairs with u < v, sorted."""
        out = []
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out


def _full_rows(group: FiniteGroup) -> list[int]:
    """Adjacency over all elements: clique union over maximal cyclic
    subgroups (every <w> lies inside a maximal one)."""
    rows = [0] * group.order
    for sub in maximal_cyclic_subgroups(group):
        m = mask_of(sub.elements)
        for e in sub.elements:
            rows[e] |= m
    for e in range(group.order):
        rows[e] &= ~(1 << e)
    return rows


def _induce(rows: list[int], keep: list[int], mode: Mode, source: str) -> EpGraph:
    pos = {old: new for new, old in enumerate(keep)}
    new_rows = []
    for old in keep:
        row = 0
        for nb in iter_bits(rows[old]):
            j = pos.get(nb)
            if j is not None:
                row |= 1 << j
        new_rows.append(row)
    return EpGraph(mode=mode, labels=tuple(keep), adj=tuple(new_rows), source=source)


def build_epg(group: FiniteGroup, mode: Mode = Mode.FULL) -> EpGraph:
    """u ~ v iff u != v and both are powers of a common element.

    Star mode drops the identity; proper mode drops every dominating vertex
    of the full graph (found by degree scan, the definition-faithful route).
    """
    rows = _full_rows(group)
    n = group.order
    if mode is Mode.FULL:
        keep = list(range(n))
    elif mode is Mode.STAR:
        keep = [v for v in range(n) if v != group.identity]
    elif mode is Mode.PROPER:
        keep = [v for v in range(n) if rows[v].bit_count() != n - 1]
    else:
        raise ModeError(f"unknown mode {mode!r}")
    return _induce(rows, keep, mode, group.source)


def build_epg_scan(group: FiniteGroup, mode: Mode = Mode.FULL) -> EpGraph:
    """Brute-force oracle: adjacency by scanning all w with u, v in <w>.

    Quadratic in |G| per vertex; used to cross-check build_epg.
    """
    n = group.order
    member = [mask_of(cyclic_subgroup(group, w).elements) for w in range(n)]
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            need = (1 << u) | (1 << v)
            if any(mw & need == need for mw in member):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    if mode is Mode.FULL:
        keep = list(range(n))
    elif mode is Mode.STAR:
        keep = [v for v in range(n) if v != group.identity]
    else:
        keep = [v for v in range(n) if rows[v].bit_count() != n - 1]
    return _induce(rows, keep, mode, group.source)


def graph_dominating_vertices(graph: EpGraph) -> int:
    """Bitmask of vertices adjacent to every other vertex (full mode only)."""
    if graph.mode is not Mode.FULL:
        raise ModeError("dominating-vertex scan requires a full-mode graph")
    out = 0
    for v in range(graph.n):
        if graph.adj[v].bit_count() == graph.n - 1:
            out |= 1 << v
    return out


def costanzo_dominating_vertices(group: FiniteGroup) -> set[int]:
    """Dominating vertices via the cyclic-or-quaternion Sylow criterion:
    g qualifies iff for every prime p | o(g) the Sylow p-factor is cyclic or
    generalized quaternion and the p-component of g is central inside it."""
    profile = nilpotent_profile(group)
    central = set(center(group))
    by_p = {f.p: f for f in profile.factors}
    out: set[int] = set()
    for g in range(group.order):
        ok = True
        for p in _factorize(int(group.elem_order[g])):
            factor = by_p[p]
            if factor.classification is SylowClass.NEITHER:
                ok = False
                break
            gp = p_part(group, g, p)
            if gp not in central or gp not in factor.elements:
                ok = False
                break
        if ok:
            out.add(g)
    return out


def corollary_dom_prediction(profile: NilpotentProfile, group: FiniteGroup) -> set[int]:
    """Predicted dominating-vertex set from the structural classification.

    The four cases ({e}; the cyclic part; {e, z}; cyclic part times {e, z},
    z the unique involution of the quaternion factor) reduce to one membership
    rule on prime components.  The fourth case is read as the union of the
    two defined sets (the stated "D_2 u D_3" names one undefined set).
    """
    by_p = {f.p: f for f in profile.factors}
    quat = profile.quaternion_factor
    z = None
    if quat is not None:
        z = next(g for g in quat.elements if group.elem_order[g] == 2)
    out: set[int] = set()
    for g in range(group.order):
        ok = True
        for p in _factorize(int(group.elem_order[g])):
            factor = by_p[p]
            if factor.classification is SylowClass.NEITHER:
                ok = False
                break
            if factor.classification is SylowClass.GENERALIZED_QUATERNION:
                if p_part(group, g, p) != z:
                    ok = False
                    break
        if ok:
            out.add(g)
    return out


def connected_components(graph: EpGraph) -> list[int]:
    """Vertex bitmasks of the components, ordered by least vertex."""
    unvisited = (1 << graph.n) - 1
    comps = []
    while unvisited:
        start = unvisited & -unvisited
        comp = start
        frontier = start
        while frontier:
            reach = 0
            for u in iter_bits(frontier):
                reach |= graph.adj[u]
            frontier = reach & ~comp
            comp |= frontier
        comps.append(comp)
        unvisited &= ~comp
    return comps


@dataclass(frozen=True)
class RootClass:
    representative: int  # least order-p generator of the shared minimal subgroup
    vertices: int        # bitmask over graph vertices


def root_classes(group: FiniteGroup, graph: EpGraph) -> list[RootClass]:
    """Partition vertices of a p-group graph by the unique order-p subgroup
    of <x> (cyclic p-groups have a unique minimal subgroup)."""
    if graph.mode is Mode.FULL:
        raise ModeError("root classes are defined on star or proper graphs")
    facts = _factorize(group.order)
    if len(facts) != 1:
        raise NotAPGroup(f"order {group.order} is not a prime power")
    (p,) = facts
    classes: dict[int, int] = {}
    for v, g in enumerate(graph.labels):
        o = int(group.elem_order[g])
        a = group.power(g, o // p)
        sub = cyclic_subgroup(group, a)
        rep = min(e for e in sub.elements if group.elem_order[e] == p)
        classes[rep] = classes.get(rep, 0) | (1 << v)
    return [RootClass(rep, bits) for rep, bits in sorted(classes.items())]


def export_dot(graph: EpGraph) -> str:
    """Deterministic DOT text; node names are group-element indices."""
    lines = ["graph enhanced_power_graph {"]
    lines.append(
        f"  // mode={graph.mode.value} vertices={graph.n} "
        f"edges={graph.edge_count} source={graph.source}"
    )
    for v in range(graph.n):
        lines.append(f"  {graph.labels[v]};")
    for u, v in graph.edges():
        lines.append(f"  {graph.labels[u]} -- {graph.labels[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json_dict(graph: EpGraph) -> dict:
    """{order, mode, labels, edges} with edges as sorted vertex-index pairs."""
    return {
        "order": graph.n,
        "mode": graph.mode.value,
        "labels": list(graph.labels),
        "edges": [[u, v] for u, v in graph.edges()],
    }
