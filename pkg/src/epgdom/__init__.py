"""Enhanced power graphs of finite groups: construction, exact domination
solvers, and verification of closed-form domination values for nilpotent
groups."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    EpgdomError,
    InvalidQuaternionOrder,
    ModeError,
    NotAGroup,
    NotAPGroup,
    NotNilpotent,
    OrderCapExceeded,
    ProfileInvalid,
    ResourceLimit,
    SpecError,
    TooLarge,
)
from .groups import (  # noqa: F401
    CayleyFile,
    Cyclic,
    CyclicSubgroup,
    Dihedral,
    DirectProduct,
    ElementaryAbelian,
    FiniteGroup,
    Heisenberg,
    NilpotentProfile,
    Quaternion,
    SylowClass,
    SylowFactor,
    center,
    construct_group,
    count_order_p_subgroups,
    cyclic_subgroup,
    distinct_cyclic_subgroups,
    from_cayley_table,
    maximal_cyclic_subgroups,
    nilpotent_profile,
    parse_group_spec,
    render_group_spec,
)
from .epgraph import (  # noqa: F401
    EpGraph,
    Mode,
    RootClass,
    build_epg,
    build_epg_scan,
    connected_components,
    corollary_dom_prediction,
    costanzo_dominating_vertices,
    export_dot,
    export_json_dict,
    graph_dominating_vertices,
    root_classes,
)
from .domination import (  # noqa: F401
    DominationCertificate,
    Kind,
    Method,
    brute_force_minimum,
    check_domination,
    default_budget,
    solve_minimum,
    solver_backend,
)
from .formulas import (  # noqa: F401
    FormulaOutcome,
    component_count_prediction,
    domination_formula,
    strong_domination_formula,
    total_dom_existence,
)
from .harness import (  # noqa: F401
    Budgets,
    CatalogEntry,
    VerificationReport,
    VerificationRow,
    default_catalog,
    load_catalog,
    run_verify,
    solver_selftest,
    verify_group,
)
