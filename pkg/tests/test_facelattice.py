import pytest
from conftest import compositions_upto

from chainorder.errors import BudgetError, InconsistentInputError
from chainorder.facelattice import (
    affine_rank,
    enumerate_faces,
    f_vector,
    incidence_matrix,
)
from chainorder.polytopes import (
    HRep,
    VRep,
    chain_order_hrep,
    chain_polytope_dd,
    order_polytope_dd,
    zero_one_vertices,
)
from chainorder.posets import Poset, make_maximal_ranked


def antichain(n):
    return Poset(tuple(f"a{i}" for i in range(n)), ())


def square_dd():
    h = HRep(("x", "y"), (((-1, 0), 0), ((1, 0), 1), ((0, -1), 0), ((0, 1), 1)))
    v = VRep(((0, 0), (0, 1), (1, 0), (1, 1)))
    return v, h


def test_incidence_square_two_facets_per_vertex():
    v, h = square_dd()
    inc = incidence_matrix(v, h)
    assert all(m.bit_count() == 2 for m in inc.vertex_facets)


def test_incidence_simplex():
    v, h = order_polytope_dd(Poset(("a", "b"), (("a", "b"),)))
    inc = incidence_matrix(v, h)
    assert all(m.bit_count() == 2 for m in inc.vertex_facets)
    assert all(m.bit_count() == 2 for m in inc.facet_vertices)


def test_incidence_order_2_2():
    v, h = order_polytope_dd(make_maximal_ranked((2, 2)))
    inc = incidence_matrix(v, h)
    assert (inc.n_vertices, inc.n_facets) == (7, 8)
    assert all(m.bit_count() >= 4 for m in inc.facet_vertices)


def test_incidence_rejects_outside_vertex():
    _, h = square_dd()
    with pytest.raises(InconsistentInputError):
        incidence_matrix(VRep(((2, 0),)), h)


def test_cube_f_vector():
    v, h = order_polytope_dd(antichain(3))
    assert f_vector(enumerate_faces(incidence_matrix(v, h))) == (8, 12, 6)


def test_point_f_vector():
    fl = enumerate_faces(incidence_matrix(VRep(((0,),)), HRep(("x",), ())))
    assert f_vector(fl) == (1,)


def test_segment_f_vector():
    v, h = order_polytope_dd(Poset(("a",), ()))
    assert f_vector(enumerate_faces(incidence_matrix(v, h))) == (2,)


def test_affine_rank_examples():
    assert affine_rank([(3, 1, 4)]) == 0
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1


def test_facet_of_order_2_2_has_affine_rank_3():
    v, h = order_polytope_dd(make_maximal_ranked((2, 2)))
    fl = enumerate_faces(incidence_matrix(v, h))
    facets = [fid for fid, d in enumerate(fl.dims) if d == 3 and fid != fl.top]
    assert facets
    for fid in facets:
        pts = [v.vertices[i] for i in fl.face_vertices(fid)]
        assert affine_rank(pts) == 3


def _euler_ok(fv):
    n = len(fv)
    return sum((-1) ** i * fv[i] for i in range(n)) == 1 + (-1) ** (n - 1)


def test_lattice_structure_small_corpus():
    """Euler relation, graded dim vs affine rank, facet count, closure fixpoints."""
    for tau in compositions_upto(5):
        for k in range(len(tau) + 1):
            h = chain_order_hrep(tau, k)
            v = zero_one_vertices(h)
            inc = incidence_matrix(v, h)
            fl = enumerate_faces(inc)
            fv = f_vector(fl)
            assert _euler_ok(fv), (tau, k)
            assert fv[-1] == len(h.ineqs), (tau, k)
            assert fl.dim == h.n_vars, (tau, k)
            for fid in range(fl.n_faces):
                if fid == fl.bottom:
                    continue
                pts = [v.vertices[i] for i in fl.face_vertices(fid)]
                assert affine_rank(pts) == fl.dims[fid], (tau, k, fid)
                # coatomic: the face is the meet of the facets containing it
                mask = fl.face_masks[fid]
                tight = [fm for fm in inc.facet_vertices if fm & mask == mask]
                meet = (1 << fl.n_vertices) - 1
                for fm in tight:
                    meet &= fm
                assert meet == mask, (tau, k, fid)


def test_cover_edges_are_graded():
    v, h = chain_polytope_dd(make_maximal_ranked((2, 2, 1)))
    fl = enumerate_faces(incidence_matrix(v, h))
    for lo, hi in fl.covers:
        assert fl.dims[hi] == fl.dims[lo] + 1
        assert fl.face_masks[lo] & fl.face_masks[hi] == fl.face_masks[lo]


def test_non_polytopal_incidences_raise():
    # an interior point in the vertex list breaks gradedness
    h = HRep(("x", "y"), (((-1, 0), 0), ((1, 0), 2), ((0, -1), 0), ((0, 1), 2)))
    v = VRep(((0, 0), (0, 2), (2, 0), (2, 2), (1, 1)))
    inc = incidence_matrix(v, h)
    with pytest.raises(InconsistentInputError):
        enumerate_faces(inc)


def test_face_budget():
    v, h = order_polytope_dd(antichain(3))
    with pytest.raises(BudgetError):
        enumerate_faces(incidence_matrix(v, h), max_faces=5)
