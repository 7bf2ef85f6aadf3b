"""Homogeneous bundles on Grassmannians as quiver representations:
exact cohomology, relation checking, and stability analysis."""

from . import bott, cohomology, pieri, quiver, rootsys, stability
from .bott import (
    BottValue,
    Mirror,
    cartan_matrix,
    chamber_vertices,
    components_count,
    hasse_degree,
    mirrors,
)
from .cohomology import (
    CohomologyTable,
    build_complex,
    graded_cohomology,
    graded_table,
    truncated_complex,
)
from .errors import DomainError, InternalCheckError, ParseError, QuivercohError
from .pieri import (
    PieriMatrix,
    SchurRealization,
    p2_matrices,
    pieri_map,
    realize,
    two_step_coefficients,
    verify_relation_coefficients,
    wedge_check,
)
from .quiver import (
    QuiverRep,
    arrows_from,
    check_relations,
    direct_sum,
    dual_rep,
    make_rep,
    quotient_arriving_at,
    relation_system,
    rep_from_json,
    rep_to_json,
    rescale_to_commutative,
    submodule_generated,
)
from .rootsys import (
    BundleShape,
    Space,
    dual_weight,
    killing,
    module_dim,
    omega1_weights,
    reflect,
    shape_to_weight,
    slope,
    weight_to_shape,
    weyl_dim,
)
from .stability import (
    Character,
    canonical_character,
    check_witness,
    ex73_invariants,
    pairing,
    path_semistable,
    tangent_dim,
)

__all__ = [name for name in dir() if not name.startswith("_")]
