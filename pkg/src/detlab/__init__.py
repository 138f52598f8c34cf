"""On-the-fly determinization of finite-state automata and state-complexity analysis."""

from .analysis import (
    AnalysisReport,
    IndexPeriod,
    TreeWidth,
    index_period,
    indecomposability,
    indecomposable_by_vectors,
    is_commutative,
    is_irreducible,
    max_indecomposability,
    predict_bounds,
    tree_width_analysis,
    verify_bounds,
)
from .boolmatrix import BoolMatrix, bool_matmul
from .core import (
    Automaton,
    AutomatonFormatError,
    WeightedAutomaton,
    parse_automaton,
    remove_epsilon,
    serialize_automaton,
    transition_matrices,
    weighted_from_automaton,
)
from .determinize import DetResult, Fuel, determinize, determinize_weighted
from .monoid import (
    MonoidClosure,
    WeightedMatrix,
    accepts_via_monoid,
    monoid_closure,
    morphism,
    weighted_monoid_closure,
    weighted_transition_matrices,
)
from .semifield import BOOLEAN, TROPICAL, Semifield

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Automaton",
    "AutomatonFormatError",
    "BOOLEAN",
    "BoolMatrix",
    "DetResult",
    "Fuel",
    "IndexPeriod",
    "MonoidClosure",
    "Semifield",
    "TROPICAL",
    "TreeWidth",
    "WeightedAutomaton",
    "WeightedMatrix",
    "accepts_via_monoid",
    "bool_matmul",
    "determinize",
    "determinize_weighted",
    "indecomposability",
    "indecomposable_by_vectors",
    "index_period",
    "is_commutative",
    "is_irreducible",
    "max_indecomposability",
    "monoid_closure",
    "morphism",
    "parse_automaton",
    "predict_bounds",
    "remove_epsilon",
    "serialize_automaton",
    "transition_matrices",
    "tree_width_analysis",
    "verify_bounds",
    "weighted_from_automaton",
    "weighted_monoid_closure",
    "weighted_transition_matrices",
]
