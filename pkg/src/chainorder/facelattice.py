"""Face lattice enumeration from vertex-facet incidences.

Faces are fixed points of the closure operator that maps a vertex set to the
common vertex set of all facets containing it.  Starting from the vertices and
repeatedly closing one added vertex at a time reaches every face; the covers
of a face are the inclusion-minimal faces obtained this way.  Grading the
cover relation from the bottom yields the dimensions, which is cross-checked
against exact affine rank in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BudgetError, InconsistentInputError
from .linalg import affine_rank  # re-export used alongside the lattice API
from .polytopes import HRep, VRep

__all__ = [
    "IncidenceMatrix",
    "FaceLattice",
    "incidence_matrix",
    "enumerate_faces",
    "f_vector",
    "affine_rank",
]


@dataclass(frozen=True)
class IncidenceMatrix:
    """Tightness bits between vertices and facet inequalities (equations excluded)."""

    n_vertices: int
    n_facets: int
    vertex_facets: tuple[int, ...]  # per vertex: bitmask of tight facet rows
    facet_vertices: tuple[int, ...]  # per facet row: bitmask of tight vertices


def incidence_matrix(v: VRep, h: HRep) -> IncidenceMatrix:
    """Exact tightness bits; a vertex violating the system is a hard error."""
    nv = len(v.vertices)
    nf = len(h.ineqs)
    vmasks = [0] * nv
    fmasks = [0] * nf
    for vi, vert in enumerate(v.vertices):
        for fi, (coeffs, rhs) in enumerate(h.ineqs):
            s = sum(c * x for c, x in zip(coeffs, vert))
            if s > rhs:
                raise InconsistentInputError(f"vertex {vert} violates row {coeffs} <= {rhs}")
            if s == rhs:
                vmasks[vi] |= 1 << fi
                fmasks[fi] |= 1 << vi
        for coeffs, rhs in h.eqs:
            if sum(c * x for c, x in zip(coeffs, vert)) != rhs:
                raise InconsistentInputError(f"vertex {vert} violates equation {coeffs} = {rhs}")
    if len(set(fmasks)) != nf:
        raise InconsistentInputError("two facet rows are tight on the same vertex set")
    return IncidenceMatrix(nv, nf, tuple(vmasks), tuple(fmasks))


@dataclass(frozen=True)
class FaceLattice:
    """All faces (as vertex-index bitmasks), cover edges, and dimensions.

    Includes the bottom (empty) face and the top face; those two are excluded
    from the f-vector.
    """

    n_vertices: int
    face_masks: tuple[int, ...]
    dims: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]  # (lower face id, upper face id)
    bottom: int
    top: int

    @property
    def n_faces(self) -> int:
        return len(self.face_masks)

    @property
    def dim(self) -> int:
        return self.dims[self.top]

    def face_vertices(self, fid: int) -> tuple[int, ...]:
        out = []
        m = self.face_masks[fid]
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.face_masks]
        for lo, hi in self.covers:
            adj[lo].append(hi)
        return tuple(tuple(a) for a in adj)


def enumerate_faces(inc: IncidenceMatrix, max_faces: int | None = None) -> FaceLattice:
    """Breadth-first closure enumeration of the whole face lattice.

    Faces are keyed by their tight-facet mask, which the closure updates with a
    single AND per added vertex; the vertex set is computed once per distinct
    face.  A non-graded cover relation signals inconsistent input and raises.
    """
    nv, nf = inc.n_vertices, inc.n_facets
    vmasks = inc.vertex_facets
    fverts = inc.facet_vertices
    all_v = (1 << nv) - 1

    def vertices_of(tmask: int) -> int:
        m = all_v
        while tmask:
            low = tmask & -tmask
            m &= fverts[low.bit_length() - 1]
            tmask ^= low
        return m

    face_masks: list[int] = [0]  # id 0 = bottom (empty face)
    tmasks: list[int] = [-1]
    by_tight: dict[int, int] = {}
    in_edges: list[list[int]] = [[]]
    cover_edges: list[tuple[int, int]] = []

    def face_id(tmask: int) -> int:
        fid = by_tight.get(tmask)
        if fid is None:
            fid = len(face_masks)
            if max_faces is not None and fid > max_faces:
                raise BudgetError(f"face budget {max_faces} exceeded")
            by_tight[tmask] = fid
            face_masks.append(vertices_of(tmask))
            tmasks.append(tmask)
            in_edges.append([])
            queue.append(fid)
        return fid

    queue: list[int] = []
    atoms = sorted({face_id(vmasks[v]) for v in range(nv)})
    for a in atoms:
        in_edges[a].append(0)
        cover_edges.append((0, a))

    qi = 0
    while qi < len(queue):
        fid = queue[qi]
        qi += 1
        fmask = face_masks[fid]
        tmask = tmasks[fid]
        if fmask == all_v:
            continue
        cand: dict[int, int] = {}
        rest = all_v & ~fmask
        while rest:
            low = rest & -rest
            rest ^= low
            t2 = tmask & vmasks[low.bit_length() - 1]
            if t2 not in cand:
                cand[t2] = face_id(t2)
        # covers of this face = candidates with inclusion-maximal tight sets
        ordered = sorted(cand, key=lambda t: -t.bit_count())
        kept: list[int] = []
        for t2 in ordered:
            if not any(tk & t2 == t2 for tk in kept):
                kept.append(t2)
                gid = cand[t2]
                in_edges[gid].append(fid)
                cover_edges.append((fid, gid))

    # grade from the bottom; every in-edge must agree on the rank
    order = sorted(range(len(face_masks)), key=lambda f: face_masks[f].bit_count())
    rank = [-1] * len(face_masks)
    rank[0] = 0
    for fid in order:
        if fid == 0:
            continue
        parents = in_edges[fid]
        if not parents:
            raise InconsistentInputError("face unreachable from the bottom")
        ranks = {rank[pf] for pf in parents}
        if len(ranks) != 1 or -1 in ranks:
            raise InconsistentInputError("face lattice is not graded; inconsistent incidences")
        rank[fid] = ranks.pop() + 1
    dims = tuple(r - 1 for r in rank)
    top = face_masks.index(all_v)
    return FaceLattice(nv, tuple(face_masks), dims, tuple(cover_edges), 0, top)


def f_vector(fl: FaceLattice) -> tuple[int, ...]:
    """Face counts per dimension, bottom and top excluded.

    A 0-dimensional polytope is reported as (1,): its single point is its only
    face worth counting.
    """
    n = fl.dim
    if n == 0:
        return (1,)
    counts = [0] * n
    for fid, d in enumerate(fl.dims):
        if fid == fl.bottom or fid == fl.top:
            continue
        if not 0 <= d < n:
            raise InconsistentInputError("proper face with out-of-range dimension")
        counts[d] += 1
    return tuple(counts)
