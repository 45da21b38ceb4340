#!/usr/bin/env python3
"""Benchmark the compiled branch-and-bound kernel against the pure-Python
fallback on proper enhanced power graphs and random instances.

Usage: python benchmarks/solver_bench.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from epgdom import Kind, build_epg, construct_group, parse_group_spec
from epgdom import _domcore_py
from epgdom.domination import _candidate_rows
from epgdom.epgraph import Mode, connected_components, iter_bits

try:
    from epgdom import _domcore
except ImportError:
    _domcore = None

GROUP_CASES = ["Q32", "E3^2xQ8", "Z15xQ8", "E2^2xE3^2", "H3"]


def component_instances(graph, kind):
    """The per-component cover instances exactly as solve_minimum builds them."""
    cands = _candidate_rows(graph, kind)
    out = []
    for comp in connected_components(graph):
        verts = list(iter_bits(comp))
        pos = {v: i for i, v in enumerate(verts)}
        local = []
        for v in verts:
            row = 0
            for u in iter_bits(cands[v]):
                row |= 1 << pos[u]
            local.append(row)
        out.append(local)
    return out


def random_instance(rng, n, density):
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return [rows[i] | (1 << i) for i in range(n)]  # closed neighborhoods


def bench(kernel, instances, repeat):
    best = None
    nodes = 0
    for _ in range(repeat):
        start = time.perf_counter()
        nodes = 0
        for inst in instances:
            status, _, _, n = kernel.solve_cover(inst, 10 ** 9)
            assert status == 0
            nodes += n
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, nodes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--random-n", type=int, default=60,
                        help="vertex count for the random instances")
    args = parser.parse_args()

    if _domcore is None:
        print("compiled kernel not available; nothing to compare")
        return

    cases: list[tuple[str, list[list[int]]]] = []
    for spec in GROUP_CASES:
        graph = build_epg(construct_group(parse_group_spec(spec)), Mode.PROPER)
        insts = []
        for kind in (Kind.DOMINATING, Kind.TOTAL):
            if kind is Kind.TOTAL and any(r == 0 for r in graph.adj):
                continue
            insts.extend(component_instances(graph, kind))
        cases.append((f"proper({spec})", insts))

    rng = random.Random(42)
    for density in (0.1, 0.3, 0.6):
        insts = [random_instance(rng, args.random_n, density) for _ in range(10)]
        cases.append((f"random(n={args.random_n}, d={density})", insts))

    print(f"{'instance':28s} {'compiled':>10s} {'pure':>10s} {'speedup':>8s} {'nodes':>10s}")
    for name, insts in cases:
        t_c, nodes_c = bench(_domcore, insts, args.repeat)
        t_p, nodes_p = bench(_domcore_py, insts, args.repeat)
        assert nodes_c == nodes_p, "kernels diverged"
        print(f"{name:28s} {t_c * 1e3:9.2f}ms {t_p * 1e3:9.2f}ms "
              f"{t_p / t_c:7.1f}x {nodes_c:>10d}")


if __name__ == "__main__":
    main()
