"""Context-dependent event structures, six classical kinds, their
configuration spaces as event automata, and translations between them."""

from .automaton import (
    EventAutomaton,
    difference,
    equivalent,
    from_structure,
    is_complete,
    is_simple,
    lattice_of,
    reach,
)
from .cdes import Cdes, Element, Entry, configurations, context, enabled, is_faithful, is_full, semantic_conflict
from .classical import (
    Dces,
    Fes,
    Grow,
    Ies,
    Inhibitor,
    Pes,
    Rces,
    Rpes,
    Shrink,
)
from .kernel import (
    ConflictRelation,
    HypothesisError,
    Lattice,
    ModelSyntaxError,
    PreconditionError,
    ValidationError,
    es,
    is_conflict_free,
)
from .modelfile import export_dot, export_json, parse, serialize
from .oracle import run_oracle
from .translate import TranslationReport, translate

__all__ = [
    "Cdes", "Element", "Entry", "configurations", "context", "enabled", "is_full", "is_faithful",
    "semantic_conflict", "Pes", "Fes", "Rpes", "Dces", "Shrink", "Grow", "Ies", "Inhibitor", "Rces",
    "EventAutomaton", "from_structure", "equivalent", "difference", "is_simple", "is_complete",
    "reach", "lattice_of", "ConflictRelation", "Lattice", "es", "is_conflict_free",
    "ValidationError", "ModelSyntaxError", "PreconditionError", "HypothesisError",
    "parse", "serialize", "export_dot", "export_json", "run_oracle", "translate", "TranslationReport",
]
