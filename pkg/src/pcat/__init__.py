"""Exact engine for partial actions of finite categories on finite sets.

Validate the axioms of a partial action, build its universal globalization
as a quotient of morphism/point pairs, factor other global actions through
it, and push finite topologies through the whole construction.
"""

from .category import (
    Category,
    GroupoidWitness,
    ValidationReport,
    Violation,
    composable_pairs,
    compose,
    is_groupoid,
    validate_category,
)
from .action import (
    AxiomReport,
    PartialAction,
    SetFunctor,
    TripleForm,
    check_category_axioms,
    check_groupoid_axioms,
    check_triple_axioms,
    from_functor,
    from_triple,
    functor_violations,
    to_functor,
    to_triple,
)
from .globalization import (
    AxiomError,
    GFunctionReport,
    Globalization,
    InducedReport,
    MediationError,
    SimPair,
    SimRelation,
    XBar,
    build_globalization,
    build_xbar,
    check_g_function,
    check_induced,
    enumerate_globalizations,
    equiv_closure,
    induces_source,
    mediating,
    mediating_candidates,
    naive_closure,
    sim_pairs,
)
from .topology import (
    ActionContinuityReport,
    FiniteTopology,
    Space,
    TopGlobalization,
    TopScenario,
    TopologyReport,
    Verdict,
    check_continuous_action,
    check_continuous_partial,
    check_embedding_open,
    check_graph_open,
    check_star_open,
    check_topological_category,
    embedding_open_verdict,
    min_nbhd,
    product_topology,
    quotient_space,
    quotient_topology,
    subspace_topology,
    topologize_globalization,
    validate_topology,
)
from .dsl import (
    ParseError,
    Scenario,
    Span,
    globalization_to_scenario,
    parse,
    serialize,
)
from . import fixtures, oracle

__all__ = [
    "Category",
    "GroupoidWitness",
    "ValidationReport",
    "Violation",
    "composable_pairs",
    "compose",
    "is_groupoid",
    "validate_category",
    "AxiomReport",
    "PartialAction",
    "SetFunctor",
    "TripleForm",
    "check_category_axioms",
    "check_groupoid_axioms",
    "check_triple_axioms",
    "from_functor",
    "from_triple",
    "functor_violations",
    "to_functor",
    "to_triple",
    "AxiomError",
    "GFunctionReport",
    "Globalization",
    "InducedReport",
    "MediationError",
    "SimPair",
    "SimRelation",
    "XBar",
    "build_globalization",
    "build_xbar",
    "check_g_function",
    "check_induced",
    "enumerate_globalizations",
    "equiv_closure",
    "induces_source",
    "mediating",
    "mediating_candidates",
    "naive_closure",
    "sim_pairs",
    "ActionContinuityReport",
    "FiniteTopology",
    "Space",
    "TopGlobalization",
    "TopScenario",
    "TopologyReport",
    "Verdict",
    "check_continuous_action",
    "check_continuous_partial",
    "check_embedding_open",
    "check_graph_open",
    "check_star_open",
    "check_topological_category",
    "embedding_open_verdict",
    "min_nbhd",
    "product_topology",
    "quotient_space",
    "quotient_topology",
    "subspace_topology",
    "topologize_globalization",
    "validate_topology",
    "ParseError",
    "Scenario",
    "Span",
    "globalization_to_scenario",
    "parse",
    "serialize",
    "fixtures",
    "oracle",
]

__version__ = "0.1.0"
