"""Exact desk-scale verification of decision-list and DNF shrinkage.

Truth-table functions, restrictions, decision lists, exact complexity
measures (DT, DL, DNF, CNF, ODL, wODL, depth-2 forms and their widths),
p-random restriction machinery, and verifiers for every explicit-constant
shrinkage bound they satisfy.
"""

from .caps import CAPS, BudgetError, Caps
from .core import (
    STAR,
    HypercubeFunction,
    Restriction,
    apply_restriction,
    complement,
    format_function,
    is_constant,
    make_function,
    parse_function,
)
from .dlists import (
    BOTTOM,
    TOP,
    Clause,
    CoverageError,
    DecisionList,
    DnfFormula,
    Literal,
    MuDensity,
    augment_restriction,
    classify_mu,
    dnf_to_dl,
    format_clause,
    format_decision_list,
    format_dnf,
    is_orthogonal,
    is_weakly_orthogonal,
    mu_density,
    parse_clause,
    parse_decision_list,
    parse_dnf,
    restrict_dl,
    useful_indices,
    validate_dl,
)
from .families import (
    and_function,
    function_from_spec,
    or_function,
    parity,
    parse_family,
    random_function,
    read_once_tree,
    tribes,
)
from .measures import (
    MEASURES,
    ChainReport,
    MeasureResult,
    cnf_min_size,
    cnf_width,
    dl_min_size,
    dl_width,
    dnf_min_size,
    dnf_width,
    dt_depth,
    dt_size,
    f2_size,
    l2_leafsize,
    measure_chain_check,
    measure_value,
    odl_min_size,
    prime_implicants,
    wodl_min_size,
)
from .restrictions import (
    WeightedRestriction,
    compose,
    enumerate_rp,
    restriction_from_code,
    rp_mass,
    sample_rp,
)
from .shrinkage import (
    BoundSpec,
    ProofChainLedger,
    ShrinkageReport,
    andor_leafsize,
    check_dl_shrinkage,
    check_dnf_shrinkage,
    check_dt_shrinkage,
    check_f2,
    check_l2,
    check_lwz_width_bound,
    check_odl,
    check_parity_equality,
    check_proof_chain,
    check_useful_expectation,
    check_wodl,
    curve_table,
    exact_expectation,
    expectation_value,
    expected_useful_count,
    gamma,
    mc_expectation,
    random_decision_list,
    tail_dt_depth,
)
from .verify import SUITES, run_suite, worked_example

__version__ = "0.1.0"
