"""Exact face-lattice and f-vector computations for order, chain, and
chain-order polytopes of finite posets, with two independent pipelines:
geometric (vertex-facet incidence closure) and combinatorial (face normal
forms of maximal ranked posets)."""

from .cliques import Graph, maximal_cliques, maximal_independent_sets
from .errors import BudgetError, InconsistentInputError
from .facelattice import FaceLattice, IncidenceMatrix, enumerate_faces, f_vector, incidence_matrix
from .linalg import affine_rank
from .normalform import (
    FaceNormalForm,
    codimension,
    enumerate_normal_forms,
    f_vector_normal_form,
    psi_map,
    verify_injection,
    verify_monotone,
)
from .polytopes import (
    HRep,
    VRep,
    chain_order_hrep,
    chain_polytope_dd,
    lattice_point_count,
    order_polytope_dd,
    vertex_enum_exact,
    zero_one_vertices,
)
from .posets import (
    ExtendedPoset,
    KDecomposition,
    Poset,
    comparability_graph,
    extend_poset,
    has_hl_pattern,
    k_decomposition,
    make_maximal_ranked,
    maximal_chains,
    quotient_by_partition,
    validate_face_partition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
