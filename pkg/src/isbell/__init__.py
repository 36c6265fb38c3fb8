"""Isbell nucleus of a real matrix: metric geometry, witness cells, events, chambers and concept towers."""

from __future__ import annotations

from .errors import CapExceededError, InputError, IsbellError, NondegeneracyError, UnsupportedError
from .extreal import NEG_INF, POS_INF, ZERO, ExtReal, ext, parse, render
from .profunctor import (
    COPRESHEAF,
    PRESHEAF,
    NucleusPoint,
    Potential,
    Profunctor,
    closure,
    closure_copresheaf,
    closure_presheaf,
    gauge_transform,
    isbell_lower,
    isbell_upper,
    is_nucleus_point,
    make_nucleus_point,
    transform,
)
from .metric import ProjectiveClass, profunctor_norm, proj_dist, proj_dist_nucleus
from .gap import GapMatrix, gap_matrix, witness_relation
from .polyhedra import (
    CellDescriptor,
    cell_dimension,
    enumerate_cells,
    interior_point,
    tight_closure,
    tropical_value,
)
from .events import event_construct, event_distance
from .chambers import OrderSignature, chamber_adjacency, enumerate_chambers, signature_at
from .linear import linear_feasible
from .fca import (
    BoolRelation,
    Concept,
    ConceptLattice,
    Tower,
    chamber_tower,
    concept_lattice,
    derive_down,
    derive_up,
    point_tower,
    specialize_to_face,
    threshold_relation,
    transport_ext,
    transport_int,
)

__version__ = "0.1.0"

__all__ = [
    "BoolRelation",
    "CapExceededError",
    "cell_dimension",
    "CellDescriptor",
    "chamber_adjacency",
    "chamber_tower",
    "closure",
    "closure_copresheaf",
    "closure_presheaf",
    "Concept",
    "concept_lattice",
    "ConceptLattice",
    "COPRESHEAF",
    "derive_down",
    "derive_up",
    "enumerate_cells",
    "enumerate_chambers",
    "event_construct",
    "event_distance",
    "ext",
    "ExtReal",
    "gap_matrix",
    "GapMatrix",
    "gauge_transform",
    "InputError",
    "interior_point",
    "is_nucleus_point",
    "isbell_lower",
    "isbell_upper",
    "IsbellError",
    "linear_feasible",
    "make_nucleus_point",
    "NEG_INF",
    "NondegeneracyError",
    "NucleusPoint",
    "OrderSignature",
    "parse",
    "point_tower",
    "POS_INF",
    "Potential",
    "PRESHEAF",
    "Profunctor",
    "profunctor_norm",
    "proj_dist",
    "proj_dist_nucleus",
    "ProjectiveClass",
    "render",
    "signature_at",
    "specialize_to_face",
    "threshold_relation",
    "tight_closure",
    "Tower",
    "transform",
    "transport_ext",
    "transport_int",
    "tropical_value",
    "UnsupportedError",
    "witness_relation",
    "ZERO",
]
