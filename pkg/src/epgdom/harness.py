"""Verification pipeline: build a catalog of groups, compute everything
three ways where possible, and report matches and mismatches.

The exact solver is the reference value; closed forms annotate it.  A
mismatching closed form is only acceptable on rows tagged
``known-discrepancy``; anything else flips the run's exit status.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from . import __version__
from .domination import (
    DominationCertificate,
    Kind,
    brute_force_minimum,
    check_domination,
    default_budget,
    solve_minimum,
    solver_backend,
)
from .epgraph import (
    EpGraph,
    Mode,
    build_epg,
    build_epg_scan,
    connected_components,
    corollary_dom_prediction,
    costanzo_dominating_vertices,
    graph_dominating_vertices,
    iter_bits,
)
from .errors import NotNilpotent, ResourceLimit
from .formulas import (
    NO_TOTAL_DOMINATING_SET,
    FormulaOutcome,
    component_count_prediction,
    domination_formula,
    strong_domination_formula,
    total_dom_existence,
)
from .groups import GroupSpec, construct_group, nilpotent_profile, parse_group_spec, render_group_spec

SCAN_ORACLE_LIMIT = 64

TAG_KNOWN_DISCREPANCY = "known-discrepancy"
TAG_EXPECT_NO_TOTAL_DOM = "expect-no-total-dom"
TAG_QUATERNION = "quaternion"
TAG_P_GROUP = "p-group"
TAG_CYCLIC = "cyclic"
TAG_NON_NILPOTENT = "non-nilpotent"

VERDICT_MATCH = "MATCH"
VERDICT_MISMATCH = "MISMATCH"
VERDICT_NOT_COVERED = "NOT_COVERED"
VERDICT_NO_TOTAL_DOM = "NO_TOTAL_DOM"
VERDICT_INCOMPLETE = "INCOMPLETE"


@dataclass(frozen=True)
class CatalogEntry:
    spec: GroupSpec
    tags: frozenset[str] = frozenset()

    @property
    def name(self) -> str:
        return render_group_spec(self.spec)


@dataclass
class Budgets:
    node_budget: int = 0  # 0 means: resolve from env / default at solve time

    def resolve(self) -> int:
        return self.node_budget or default_budget()


def default_catalog() -> list[CatalogEntry]:
    """Built-in verification targets covering every theorem branch plus a
    non-nilpotent control imported from a Cayley table."""
    def entry(text: str, *tags: str) -> CatalogEntry:
        return CatalogEntry(parse_group_spec(text), frozenset(tags))

    s3_path = resources.files("epgdom").joinpath("data/s3.tbl")
    return [
        entry("Z6", TAG_CYCLIC),
        entry("Z12", TAG_CYCLIC),
        entry("E2^2", TAG_P_GROUP, TAG_EXPECT_NO_TOTAL_DOM),
        entry("Z4xZ2", TAG_P_GROUP, TAG_EXPECT_NO_TOTAL_DOM),
        entry("D8", TAG_P_GROUP, TAG_EXPECT_NO_TOTAL_DOM),
        entry("E3^2", TAG_P_GROUP),
        entry("Z8", TAG_P_GROUP, TAG_CYCLIC),
        entry("H3", TAG_P_GROUP),
        entry("Q8", TAG_P_GROUP, TAG_QUATERNION),
        entry("Q16", TAG_P_GROUP, TAG_QUATERNION),
        entry("Q32", TAG_P_GROUP, TAG_QUATERNION),
        entry("Z5xQ8", TAG_QUATERNION),
        entry("Z15xQ8", TAG_QUATERNION),
        entry("E3^2xQ8", TAG_QUATERNION),
        entry("E3^2xZ2", TAG_KNOWN_DISCREPANCY),
        entry("E3^2xZ4", TAG_KNOWN_DISCREPANCY),
        entry("E2^2xE3^2"),
        entry(f"file:{s3_path}", TAG_NON_NILPOTENT),
    ]


def _formula_scalar(outcome: FormulaOutcome | None):
    if outcome is None:
        return None
    if outcome.is_number:
        return outcome.value
    return outcome.special


def _oracle_scalar(cert: DominationCertificate | None):
    if cert is None:
        return None
    return cert.size if cert.optimal else "none_exists"


@dataclass
class VerificationRow:
    spec: str
    tags: tuple[str, ...]
    order: int = 0
    nilpotent: bool | None = None
    profile: str = ""
    dom_graph: int | None = None
    dom_costanzo: int | None = None
    dom_corollary: int | None = None
    dom_agree: bool | None = None
    epg_scan_match: bool | None = None
    proper_vertices: int | None = None
    components_actual: int | None = None
    components_predicted: object = None
    components_case: str = ""
    components_match: bool | None = None
    gamma_oracle: int | None = None
    gamma_formula: object = None
    gamma_case: str = ""
    gamma_match: bool | None = None
    gamma_strong_oracle: object = None
    gamma_strong_formula: object = None
    gamma_strong_case: str = ""
    gamma_strong_match: bool | None = None
    total_dom_exists: bool | None = None
    witnesses_valid: bool | None = None
    verdict: str = VERDICT_NOT_COVERED
    expected_mismatch: bool = False
    incomplete: bool = False
    notes: tuple[str, ...] = ()
    gamma_certificate: dict | None = None
    gamma_strong_certificate: dict | None = None
    nodes_explored: int = 0

    CSV_FIELDS = (
        "spec", "tags", "order", "nilpotent", "profile",
        "dom_graph", "dom_costanzo", "dom_corollary", "dom_agree",
        "epg_scan_match", "proper_vertices",
        "components_actual", "components_predicted", "components_case", "components_match",
        "gamma_oracle", "gamma_formula", "gamma_case", "gamma_match",
        "gamma_strong_oracle", "gamma_strong_formula", "gamma_strong_case",
        "gamma_strong_match", "total_dom_exists", "witnesses_valid",
        "verdict", "expected_mismatch", "incomplete", "notes", "nodes_explored",
    )

    def to_csv_dict(self) -> dict:
        out = {}
        for name in self.CSV_FIELDS:
            value = getattr(self, name)
            if name == "tags":
                value = " ".join(value)
            elif name == "notes":
                value = "; ".join(value)
            elif value is None:
                value = ""
            out[name] = value
        return out

    def to_json_dict(self) -> dict:
        out = {name: getattr(self, name) for name in self.CSV_FIELDS}
        out["tags"] = list(self.tags)
        out["notes"] = list(self.notes)
        out["gamma_certificate"] = self.gamma_certificate
        out["gamma_strong_certificate"] = self.gamma_strong_certificate
        return out


def verify_group(entry: CatalogEntry, budgets: Budgets | None = None) -> VerificationRow:
    """Full pipeline for one catalog entry.

    construct -> profile -> full graph -> dominating vertices three ways ->
    proper graph -> components vs prediction -> exact gamma and strong gamma
    -> closed forms -> verdict.  Non-nilpotent groups keep the graph-only
    checks; a blown node budget marks the row INCOMPLETE.
    """
    budgets = budgets or Budgets()
    row = VerificationRow(spec=entry.name, tags=tuple(sorted(entry.tags)))
    notes: list[str] = []
    hard_failures: list[str] = []

    group = construct_group(entry.spec)
    row.order = group.order

    full = build_epg(group, Mode.FULL)
    dom_bits = graph_dominating_vertices(full)
    dom_elements = {full.labels[v] for v in iter_bits(dom_bits)}
    row.dom_graph = len(dom_elements)

    if group.order <= SCAN_ORACLE_LIMIT:
        scan = build_epg_scan(group, Mode.FULL)
        row.epg_scan_match = scan.adj == full.adj
        if not row.epg_scan_match:
            hard_failures.append("clique-union build disagrees with pairwise scan")

    profile = None
    strong_formula = dom_formula = comp_formula = None
    try:
        profile = nilpotent_profile(group)
        row.nilpotent = True
        row.profile = profile.summary()
    except NotNilpotent as exc:
        row.nilpotent = False
        row.profile = f"not nilpotent (p={exc.prime})"
        notes.append(f"profile error: {exc}")

    if profile is not None:
        costanzo = costanzo_dominating_vertices(group)
        corollary = corollary_dom_prediction(profile, group)
        row.dom_costanzo = len(costanzo)
        row.dom_corollary = len(corollary)
        row.dom_agree = dom_elements == costanzo == corollary
        if not row.dom_agree:
            hard_failures.append("dominating-vertex routes disagree")
        row.total_dom_exists = total_dom_existence(profile, group)
        strong_formula = strong_domination_formula(profile)
        dom_formula = domination_formula(profile)
        comp_formula = component_count_prediction(profile)
        row.gamma_formula = _formula_scalar(dom_formula)
        row.gamma_case = dom_formula.case_tag
        row.gamma_strong_formula = _formula_scalar(strong_formula)
        row.gamma_strong_case = strong_formula.case_tag
        row.components_predicted = _formula_scalar(comp_formula)
        row.components_case = comp_formula.case_tag

    proper = build_epg(group, Mode.PROPER)
    row.proper_vertices = proper.n
    row.components_actual = len(connected_components(proper))
    if comp_formula is not None and comp_formula.is_number:
        row.components_match = comp_formula.value == row.components_actual
        if not row.components_match:
            notes.append(
                f"component count {row.components_actual} != predicted {comp_formula.value}"
            )

    try:
        gamma_cert = solve_minimum(proper, Kind.DOMINATING, budgets.resolve())
        strong_cert = solve_minimum(proper, Kind.TOTAL, budgets.resolve())
    except ResourceLimit as exc:
        row.incomplete = True
        notes.append(f"resource limit: {exc}")
        row.notes = tuple(notes)
        row.verdict = VERDICT_INCOMPLETE
        return row

    row.nodes_explored = gamma_cert.nodes_explored + strong_cert.nodes_explored
    row.gamma_oracle = gamma_cert.size
    row.gamma_strong_oracle = _oracle_scalar(strong_cert)
    row.gamma_certificate = gamma_cert.to_json_dict()
    row.gamma_strong_certificate = strong_cert.to_json_dict()

    row.witnesses_valid = True
    for cert in (gamma_cert, strong_cert):
        if cert.optimal:
            bits = 0
            for v in cert.witness:
                bits |= 1 << v
            if not check_domination(proper, bits, cert.kind):
                row.witnesses_valid = False
                hard_failures.append(f"{cert.kind.value} witness fails re-validation")

    if dom_formula is not None and dom_formula.is_number:
        row.gamma_match = dom_formula.value == gamma_cert.size
        if not row.gamma_match:
            notes.append(f"gamma {gamma_cert.size} != formula {dom_formula.value}")
    if strong_formula is not None:
        if strong_formula.is_number:
            row.gamma_strong_match = strong_cert.optimal and strong_formula.value == strong_cert.size
            if not row.gamma_strong_match:
                notes.append(
                    f"gamma_strong {_oracle_scalar(strong_cert)} != formula {strong_formula.value}"
                )
        elif strong_formula.special == NO_TOTAL_DOMINATING_SET:
            row.gamma_strong_match = not strong_cert.optimal
            if not row.gamma_strong_match:
                notes.append("theorem predicts no total dominating set but the solver found one")

    if profile is not None:
        if row.total_dom_exists is not strong_cert.optimal:
            hard_failures.append("existence predicate disagrees with the solver")
        if TAG_EXPECT_NO_TOTAL_DOM in entry.tags and strong_cert.optimal:
            hard_failures.append("tagged expect-no-total-dom but a total dominating set exists")

    mismatches = [
        m for m in (row.components_match, row.gamma_match, row.gamma_strong_match)
        if m is False
    ]
    if hard_failures:
        row.verdict = VERDICT_MISMATCH
        row.expected_mismatch = False
        notes.extend(hard_failures)
    elif mismatches:
        row.verdict = VERDICT_MISMATCH
        row.expected_mismatch = TAG_KNOWN_DISCREPANCY in entry.tags
    elif profile is not None and not strong_cert.optimal:
        row.verdict = VERDICT_NO_TOTAL_DOM
    elif any(m is True for m in (row.components_match, row.gamma_match,
                                 row.gamma_strong_match, row.dom_agree,
                                 row.epg_scan_match, row.witnesses_valid)):
        row.verdict = VERDICT_MATCH
    else:
        row.verdict = VERDICT_NOT_COVERED
    row.notes = tuple(notes)
    return row


@dataclass
class VerificationReport:
    rows: list[VerificationRow]
    meta: dict = field(default_factory=dict)

    @property
    def unexpected_mismatches(self) -> list[VerificationRow]:
        return [r for r in self.rows
                if r.verdict == VERDICT_MISMATCH and not r.expected_mismatch]

    @property
    def incomplete_rows(self) -> list[VerificationRow]:
        return [r for r in self.rows if r.incomplete]

    @property
    def exit_code(self) -> int:
        if self.incomplete_rows:
            return 3
        if self.unexpected_mismatches:
            return 1
        return 0

    def to_json_text(self) -> str:
        payload = {"meta": self.meta, "rows": [r.to_json_dict() for r in self.rows]}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=VerificationRow.CSV_FIELDS,
                                lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row.to_csv_dict())
        return buf.getvalue()


def _verify_entry(args: tuple[CatalogEntry, Budgets]) -> VerificationRow:
    return verify_group(args[0], args[1])


def run_verify(catalog: list[CatalogEntry], output_path: str | None = None,
               budgets: Budgets | None = None, fmt: str = "json",
               workers: int = 1) -> VerificationReport:
    """Verify every catalog entry (in order) and optionally write the report.

    Rows are independent jobs; with ``workers > 1`` they run in separate
    processes and are reassembled in catalog order.
    """
    budgets = budgets or Budgets()
    start = time.monotonic()
    if workers > 1 and len(catalog) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_verify_entry, [(e, budgets) for e in catalog]))
    else:
        rows = [verify_group(entry, budgets) for entry in catalog]
    meta = {
        "budgets": {"node_budget": budgets.resolve()},
        "catalog_size": len(catalog),
        "seed": None,
        "solver_backend": solver_backend(),
        "versions": {"epgdom": __version__},
        "unexpected_mismatches": sum(
            1 for r in rows if r.verdict == VERDICT_MISMATCH and not r.expected_mismatch
        ),
        "wall_time_s": round(time.monotonic() - start, 3),
    }
    report = VerificationReport(rows=rows, meta=meta)
    if output_path:
        text = report.to_csv_text() if fmt == "csv" else report.to_json_text()
        with open(output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return report


def load_catalog(path: str) -> list[CatalogEntry]:
    """One spec per line; optional ``#tags: a,b`` suffix; ``#`` comments."""
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or (line.startswith("#") and not line.startswith("#tags:")):
                continue
            tags: frozenset[str] = frozenset()
            if "#tags:" in line:
                spec_text, _, tag_text = line.partition("#tags:")
                tags = frozenset(
                    t for t in tag_text.replace(",", " ").split() if t
                )
                line = spec_text.strip()
            entries.append(CatalogEntry(parse_group_spec(line), tags))
    return entries


# ---------------------------------------------------------------------------
# Solver self-test on random instances
# ---------------------------------------------------------------------------


@dataclass
class SelftestSummary:
    seed: int
    trials: int
    comparisons: int
    failure: dict | None

    @property
    def passed(self) -> bool:
        return self.failure is None


def _random_graph(rng: random.Random, n: int, flavor) -> EpGraph:
    rows = [0] * n
    if flavor == "cliques":
        verts = list(range(n))
        pos = 0
        while pos < n:
            size = min(rng.randint(1, 5), n - pos)
            for i in range(pos, pos + size):
                for j in range(pos, pos + size):
                    if i != j:
                        rows[i] |= 1 << j
            pos += size
    else:
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < flavor:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
    return EpGraph(mode=Mode.FULL, labels=tuple(range(n)), adj=tuple(rows),
                   source=f"selftest-n{n}")


def solver_selftest(seed: int = 1, trials: int = 100, max_n: int = 14) -> SelftestSummary:
    """Cross-check branch and bound against subset enumeration on random
    graphs (three edge densities plus disjoint-clique unions)."""
    rng = random.Random(seed)
    flavors = [0.1, 0.3, 0.6, "cliques"]
    comparisons = 0
    for trial in range(trials):
        flavor = flavors[trial % len(flavors)]
        n = rng.randint(1, max_n)
        graph = _random_graph(rng, n, flavor)
        for kind in (Kind.DOMINATING, Kind.TOTAL):
            got = solve_minimum(graph, kind)
            want = brute_force_minimum(graph, kind, max_vertices=max_n)
            comparisons += 1
            if (got.status, got.size) != (want.status, want.size):
                return SelftestSummary(seed, trial + 1, comparisons, {
                    "trial": trial,
                    "n": n,
                    "kind": kind.value,
                    "edges": graph.edges(),
                    "branch_and_bound": got.to_json_dict(),
                    "brute_force": want.to_json_dict(),
                })
    return SelftestSummary(seed, trials, comparisons, None)
