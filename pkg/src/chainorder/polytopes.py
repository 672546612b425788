"""Exact double descriptions of order, chain, and chain-order polytopes.

Inequality systems use integer coefficients only; vertex computations are done
with exact integer or rational arithmetic.  Rows are kept in a canonical sort
order so that structurally equal systems compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import BudgetError, InconsistentInputError
from .linalg import affine_rank, int_matrix_rank
from .posets import Poset, check_tau, extend_poset, make_maximal_ranked, maximal_antichains, maximal_chains

Row = tuple[tuple[int, ...], int]

ZERO_ONE_MAX_VARS = 30
EXACT_ENUM_MAX_SUBSETS = 10**7
LATTICE_MAX_VARS = 12
LATTICE_MAX_DILATION = 4
LATTICE_MAX_POINTS = 10**8
_CHUNK = 1 << 16


@dataclass(frozen=True)
class HRep:
    """System ``coeffs . x <= rhs`` (ineqs) and ``coeffs . x = rhs`` (eqs)."""

    var_names: tuple
    ineqs: tuple[Row, ...]
    eqs: tuple[Row, ...] = ()

    def __post_init__(self):
        n = len(self.var_names)
        for coeffs, _ in self.ineqs + self.eqs:
            if len(coeffs) != n:
                raise ValueError("row length does not match variable count")
        if len(set(self.ineqs)) != len(self.ineqs) or len(set(self.eqs)) != len(self.eqs):
            raise ValueError("duplicate rows")
        object.__setattr__(self, "ineqs", tuple(sorted(self.ineqs)))
        object.__setattr__(self, "eqs", tuple(sorted(self.eqs)))

    @property
    def n_vars(self) -> int:
        return len(self.var_names)


@dataclass(frozen=True)
class VRep:
    """Deduplicated, canonically sorted vertex list."""

    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))

    @property
    def n(self) -> int:
        return len(self.vertices)


def satisfies(point, h: HRep) -> bool:
    """Exact membership test."""
    for coeffs, rhs in h.ineqs:
        if sum(c * x for c, x in zip(coeffs, point)) > rhs:
            return False
    for coeffs, rhs in h.eqs:
        if sum(c * x for c, x in zip(coeffs, point)) != rhs:
            return False
    return True


def _unit(n: int, i: int, sign: int = 1) -> tuple[int, ...]:
    row = [0] * n
    row[i] = sign
    return tuple(row)


def _filter_of(p: Poset, seed: tuple[int, ...]) -> int:
    """Bitmask of the up-set generated by the given positions."""
    mask = 0
    for i in seed:
        mask |= (1 << i) | p.above_masks[i]
    return mask


def order_polytope_dd(p: Poset) -> tuple[VRep, HRep]:
    """Double description of the order polytope.

    Vertices are indicator vectors of up-sets, generated from subsets of
    maximal antichains; inequalities are the arcs of the extended Hasse diagram
    with the adjoined bottom and top replaced by the constants 0 and 1.
    """
    n = p.n
    masks: set[int] = set()
    for ac in maximal_antichains(p) or [()]:
        pos = [p.index[e] for e in ac]
        for r in range(len(pos) + 1):
            for sub in combinations(pos, r):
                masks.add(_filter_of(p, sub))
    verts = tuple(tuple((m >> i) & 1 for i in range(n)) for m in masks)
    rows: list[Row] = []
    for e in p.minimal_elements():
        rows.append((_unit(n, p.index[e], -1), 0))  # 0 <= x_e
    for a, b in p.covers:
        row = [0] * n
        row[p.index[a]] = 1
        row[p.index[b]] = -1
        rows.append((tuple(row), 0))  # x_a <= x_b
    for e in p.maximal_elements():
        rows.append((_unit(n, p.index[e]), 1))  # x_e <= 1
    return VRep(verts), HRep(p.elements, tuple(rows))


def chain_polytope_dd(p: Poset) -> tuple[VRep, HRep]:
    """Double description of the chain polytope.

    Vertices are indicator vectors of antichains; one sum inequality is added
    per maximal chain, on top of nonnegativity for every coordinate.
    """
    n = p.n
    verts: set[tuple[int, ...]] = set()
    for ac in maximal_antichains(p) or [()]:
        pos = [p.index[e] for e in ac]
        for r in range(len(pos) + 1):
            for sub in combinations(pos, r):
                v = [0] * n
                for i in sub:
                    v[i] = 1
                verts.add(tuple(v))
    rows: list[Row] = [(_unit(n, i, -1), 0) for i in range(n)]
    for chain in maximal_chains(extend_poset(p)):
        row = [0] * n
        for e in chain:
            row[p.index[e]] = 1
        rows.append((tuple(row), 1))
    return VRep(tuple(verts)), HRep(p.elements, tuple(rows))


def chain_order_hrep(tau, k: int) -> HRep:
    """Facet system of the chain-order polytope of a maximal ranked poset.

    Ranks up to the cut get nonnegativity rows; covers strictly above the cut
    keep their order rows (with unit upper bounds at the top rank); and every
    choice of one element per rank through the cut yields a chain row whose
    right side is the first element above the cut, or the constant 1 when the
    cut swallows the whole poset.
    """
    tau = check_tau(tau)
    ell = len(tau)
    if not 0 <= k <= ell:
        raise ValueError(f"k must be in [0, {ell}], got {k}")
    p = make_maximal_ranked(tau)
    n = p.n
    rows: list[Row] = []
    for e in p.elements:
        if e[0] <= k:
            rows.append((_unit(n, p.index[e], -1), 0))
    for a, b in p.covers:
        if a[0] >= k + 1:
            row = [0] * n
            row[p.index[a]] = 1
            row[p.index[b]] = -1
            rows.append((tuple(row), 0))
    if k < ell:
        for e in p.elements:
            if e[0] == ell:
                rows.append((_unit(n, p.index[e]), 1))
    # chain rows: one per tuple of single elements from ranks 1..k+1
    def tuples_through(depth: int):
        if depth == 0:
            yield ()
            return
        for prefix in tuples_through(depth - 1):
            for t in range(1, tau[depth - 1] + 1):
                yield prefix + ((depth, t),)

    if k == ell:
        for chain in tuples_through(ell):
            row = [0] * n
            for e in chain:
                row[p.index[e]] = 1
            rows.append((tuple(row), 1))
    else:
        for chain in tuples_through(k):
            for t in range(1, tau[k] + 1):
                row = [0] * n
                for e in chain:
                    row[p.index[e]] = 1
                row[p.index[(k + 1, t)]] -= 1
                rows.append((tuple(row), 0))
    return HRep(p.elements, tuple(rows))


_NUMPY_COEFF_LIMIT = 10**9


def _as_int_arrays(h: HRep):
    big = max(
        (abs(x) for coeffs, rhs in h.ineqs + h.eqs for x in (*coeffs, rhs)), default=0
    )
    if big > _NUMPY_COEFF_LIMIT:
        raise ValueError("coefficients too large for the fixed-width enumeration path")
    a = np.array([c for c, _ in h.ineqs], dtype=np.int64).reshape(len(h.ineqs), h.n_vars)
    b = np.array([r for _, r in h.ineqs], dtype=np.int64)
    if h.eqs:
        ae = np.array([c for c, _ in h.eqs], dtype=np.int64).reshape(len(h.eqs), h.n_vars)
        be = np.array([r for _, r in h.eqs], dtype=np.int64)
    else:
        ae = np.zeros((0, h.n_vars), dtype=np.int64)
        be = np.zeros(0, dtype=np.int64)
    return a, b, ae, be


def zero_one_vertices(h: HRep) -> VRep:
    """All 0/1 points of the system whose tight rows have full rank.

    This is the production vertex enumerator for the polytope families here,
    all of which have 0/1 vertices; `vertex_enum_exact` is the independent
    check of that assumption.
    """
    n = h.n_vars
    if n > ZERO_ONE_MAX_VARS:
        raise BudgetError(f"{n} variables exceeds the 0/1 enumeration limit {ZERO_ONE_MAX_VARS}")
    a, b, ae, be = _as_int_arrays(h)
    shifts = np.arange(n, dtype=np.int64)
    found: list[tuple[int, ...]] = []
    for start in range(0, 1 << n, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        pts = (idx[:, None] >> shifts) & 1
        ok = (pts @ a.T <= b).all(axis=1)
        if len(be):
            ok &= (pts @ ae.T == be).all(axis=1)
        for pt in pts[ok]:
            point = tuple(int(x) for x in pt)
            tight = [c for c, r in h.ineqs if sum(ci * xi for ci, xi in zip(c, point)) == r]
            tight.extend(c for c, _ in h.eqs)
            if len(tight) >= n and int_matrix_rank(tight) == n:
                found.append(point)
    return VRep(tuple(found))


def vertex_enum_exact(h: HRep):
    """Brute-force rational vertex enumeration over all full-rank row subsets.

    Independent of any 0/1 structure: every choice of n tight rows is solved
    exactly over the rationals and solutions violating nothing are kept.
    Subsets are walked recursively so that shared prefixes are eliminated only
    once; rows are kept integral (gcd-reduced) until the final back
    substitution.  Entries are ints where integral, Fractions otherwise.
    """
    n = h.n_vars
    need = n - len(h.eqs)
    if need < 0:
        raise ValueError("more equations than variables")
    total = math.comb(len(h.ineqs), need)
    if total > EXACT_ENUM_MAX_SUBSETS:
        raise BudgetError(f"C({len(h.ineqs)}, {need}) = {total} exceeds {EXACT_ENUM_MAX_SUBSETS}")

    def reduce_row(row: list[int], pivots) -> list[int] | None:
        for pcol, prow in pivots:
            if row[pcol]:
                f, p = row[pcol], prow[pcol]
                row = [a * p - f * b for a, b in zip(row, prow)]
        g = 0
        for a in row:
            g = math.gcd(g, a)
        if g == 0:
            return None
        return [a // g for a in row] if g > 1 else row

    def pivot_col(row: list[int]) -> int | None:
        for c in range(n):
            if row[c]:
                return c
        return None

    base: list[tuple[int, list[int]]] = []
    for coeffs, rhs in h.eqs:
        row = reduce_row(list(coeffs) + [rhs], base)
        if row is None:
            continue  # dependent equation; a contradictory one kills all pivots below
        col = pivot_col(row)
        if col is None:
            return ()  # 0 = nonzero: empty polytope
        base.append((col, row))
    need = n - len(base)

    aug = [list(c) + [r] for c, r in h.ineqs]
    seen: set = set()
    out = []

    def back_substitute(pivots) -> tuple[Fraction, ...]:
        x: list[Fraction | None] = [None] * n
        for pcol, prow in reversed(pivots):
            s = Fraction(prow[n])
            for c in range(n):
                if c != pcol and prow[c]:
                    s -= prow[c] * x[c]
            x[pcol] = s / prow[pcol]
        return tuple(x)

    def record(pivots) -> None:
        sol = back_substitute(pivots)
        if sol in seen:
            return
        seen.add(sol)
        if satisfies(sol, h):
            out.append(tuple(int(v) if v.denominator == 1 else v for v in sol))

    def walk(start: int, pivots, remaining: int) -> None:
        if remaining == 0:
            record(pivots)
            return
        for i in range(start, len(aug) - remaining + 1):
            row = reduce_row(aug[i], pivots)
            if row is None:
                continue
            col = pivot_col(row)
            if col is None:
                continue  # inconsistent with the chosen prefix
            pivots.append((col, row))
            walk(i + 1, pivots, remaining - 1)
            pivots.pop()

    walk(0, base, need)
    return tuple(sorted(out, key=lambda v: tuple(map(Fraction, v))))


def lattice_point_count(h: HRep, t: int) -> int:
    """Number of integer points of the t-th dilate, counted in {0..t}^n.

    Valid for polytopes inside the unit cube, which covers every family here.
    """
    n = h.n_vars
    if t < 1:
        raise ValueError("dilation factor must be positive")
    if n > LATTICE_MAX_VARS or t > LATTICE_MAX_DILATION:
        raise BudgetError(f"lattice count budget exceeded (n={n}, t={t})")
    total = (t + 1) ** n
    if total > LATTICE_MAX_POINTS:
        raise BudgetError(f"(t+1)^n = {total} exceeds {LATTICE_MAX_POINTS}")
    a, b, ae, be = _as_int_arrays(h)
    b = b * t
    be = be * t
    base = t + 1
    weights = base ** np.arange(n, dtype=np.int64)
    count = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        pts = (idx[:, None] // weights) % base
        ok = (pts @ a.T <= b).all(axis=1)
        if len(be):
            ok &= (pts @ ae.T == be).all(axis=1)
        count += int(ok.sum())
    return count


def verify_double_description(v: VRep, h: HRep) -> None:
    """Check consistency of a vertex/facet pair; raise on any defect.

    Every vertex must satisfy the system and every inequality row must be
    facet-defining: tight on a vertex subset of affine rank n-1.
    """
    n = h.n_vars
    for vert in v.vertices:
        if not satisfies(vert, h):
            raise InconsistentInputError(f"vertex {vert} violates the inequality system")
    for coeffs, rhs in h.ineqs:
        tight = [vert for vert in v.vertices if sum(c * x for c, x in zip(coeffs, vert)) == rhs]
        if not tight or affine_rank(tight) != n - 1:
            raise InconsistentInputError(f"row {coeffs} <= {rhs} is not facet-defining")
