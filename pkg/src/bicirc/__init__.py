"""Symmetric graph families, permutation groups, and quotient reduction."""

from .errors import (
    BicircError,
    OrderCapExceeded,
    ParameterError,
    ParseError,
    SearchBudgetExceeded,
)
from .perm import Partition, PermGroup, Permutation
from .graphs import (
    CoverReport,
    Graph,
    basic_props,
    bipartite_complement,
    complement,
    graph6_decode,
    graph6_encode,
    lexicographic_minus,
    lexicographic_product,
    quotient_graph,
    standard_double_cover,
)
from .gf import FieldTable, make_field, projective_incidence
from .autgrp import (
    CanonicalForm,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    find_automorphism_with_cycle_type,
    is_arc_transitive,
    is_edge_transitive,
    is_vertex_transitive,
    stabilizer_orbit_profile,
)
from .families import FamilySpec, Witness, build_spec, parse_spec
from .classify import (
    BicirculantWitness,
    CatalogEntry,
    ReductionReport,
    basic_catalog,
    census,
    identify_graph,
    is_bicirculant,
    is_circulant,
    kovacs_li_shape,
    reduce_graph,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
