"""Read-once, var-once and copy-bounded resolution for 2CNF formulas."""
from .analysis import (
    SplitPair,
    SplitTree,
    UnitShape,
    gen_mu1,
    is_minimal_unsat,
    mu1_var_ror,
    mu_class,
    mu_unit_ror,
    reconstruct,
    split_over,
    split_tree,
    unit_shape,
)
from .core import EMPTY, Clause, Formula, deficiency, evaluate, make_clause, subformula
from .decision import (
    SearchBudget,
    Verdict,
    brute_force_ror,
    brute_force_var_ror,
    copy2_refutation,
    decide_ror,
    decide_ror_mu,
    decide_var_ror,
)
from .igraph import ImplicationGraph, build_graph, decide_sat, derive_unit_read_once, find_path
from .io import parse_dimacs, parse_proof, write_dimacs, write_proof
from .resolution import (
    READ_ONCE,
    UNRESTRICTED,
    VAR_ONCE,
    CheckMode,
    CheckReport,
    Derivation,
    ProofBuilder,
    Refutation,
    Step,
    check,
    resolve,
)

__version__ = "0.1.0"
