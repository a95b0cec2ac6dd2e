"""Workbench for the propositional logic of the plausible.

Parsing and schema matching for modal formulas, Hilbert-style proof
checking across four deductive systems, truth evaluation in neighborhood,
Kripke, and universal models, bounded countermodel search, and finite
plausibility algebras.
"""

from .algebra import (
    FinitePlausibilityAlgebra,
    alg_eval,
    alg_validates,
    check_algebra,
    check_derived_laws,
    plausible_elements,
)
from .derivations import ProofBuilder, translate_proof
from .proofs import (
    Proof,
    ProofLine,
    SystemId,
    check_proof,
    is_axiom_instance,
    list_axiom_schemas,
    proof_from_data,
    proof_to_data,
)
from .search import (
    ModelClass,
    SearchBounds,
    SearchOutcome,
    Verdict,
    check_global_consequence,
    enumerate_models,
    find_countermodel,
    kernel_backend,
    run_k_experiment,
    sample_countermodel,
)
from .semantics import (
    ConditionReport,
    KripkeModel,
    NeighborhoodModel,
    UniversalModel,
    km_eval,
    km_is_valid,
    model_from_data,
    nm_check_conditions,
    nm_eval,
    nm_is_valid,
    relation_properties,
    supplement,
    truth_set,
    um_eval,
    um_is_valid,
)
from .syntax import (
    Atom,
    And,
    Bottom,
    Box,
    Diamond,
    Dialect,
    Formula,
    Iff,
    Implies,
    Nabla,
    Not,
    Or,
    Schema,
    Top,
    atoms_of,
    dialect_of,
    instantiate,
    match_schema,
    modal_depth,
    parse,
    parse_schema,
    render,
    render_schema,
    subformulas,
    translate,
)

__version__ = "0.1.0"
