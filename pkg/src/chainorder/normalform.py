"""Combinatorial normal forms for faces of chain-order polytopes.

A face of the chain-order polytope of a maximal ranked poset at cut k is
identified by three pieces of data:

* a face partition ``pi`` of the order-side elements together with the
  adjoined maximum (elements in the same block share a coordinate value, and a
  block containing the maximum is pinned to 1);
* per chain-side rank, the set of coordinates pinned to zero;
* optionally, per rank through the cut, the sets of elements carried by the
  tight chain rows ("eq sets"), with the rank just above the cut recording
  where those chains end.

The eq data is either absent (no chain row is tight) or present, and presence
with all-empty sets is meaningful: it occurs when every chain-side rank is
fully zeroed and the tight chains end in the unique glued block above the cut.
Enumeration, codimension, fast f-vector counting, and a codimension-preserving
injection from cut k to cut k+1 all live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .errors import BudgetError
from .posets import (
    BOTTOM,
    TOP,
    Poset,
    check_tau,
    extend_poset,
    make_maximal_ranked,
    validate_face_partition,
)

Element = tuple[int, int]
Block = tuple[Element, ...]

PARTITION_GROUND_LIMIT = 10


@dataclass(frozen=True)
class FaceNormalForm:
    """Canonical face data: partition blocks, zero sets, optional eq sets.

    ``pi`` partitions the order-side elements plus the adjoined maximum
    (rank len(tau)+1, index 1).  ``zero_sets[i-1]`` is the zero set of rank i
    for 1 <= i <= k.  ``eq_sets`` is None when no chain row is tight, else a
    tuple of length k+1 whose last entry lists where the tight chains end.
    """

    pi: tuple[Block, ...]
    zero_sets: tuple[tuple[Element, ...], ...]
    eq_sets: tuple[tuple[Element, ...], ...] | None

    def sort_key(self):
        return (self.pi, self.zero_sets, self.eq_sets is not None, self.eq_sets or ())


def top_element(tau) -> Element:
    return (len(tau) + 1, 1)


def rank_elements(tau, r: int) -> tuple[Element, ...]:
    if r == len(tau) + 1:
        return (top_element(tau),)
    return tuple((r, t) for t in range(1, tau[r - 1] + 1))


def order_ground(tau, k: int) -> tuple[Element, ...]:
    """Order-side elements plus the adjoined maximum, in rank-major order."""
    return tuple(e for r in range(k + 1, len(tau) + 2) for e in rank_elements(tau, r))


def _canonical_partition(blocks) -> tuple[Block, ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def face_partitions(tau, k: int):
    """Yield all face partitions of the order side plus the adjoined maximum.

    Valid blocks of such a partition are either singletons or span an interval
    of ranks: a nonempty bottom subset, every intermediate rank in full, and a
    nonempty top subset.  Two multi-rank blocks may share a boundary rank but
    their spans cannot cross, so the generator walks the ranks once keeping at
    most one block open.
    """
    tau = check_tau(tau)
    ell = len(tau)
    ranks = list(range(k + 1, ell + 2))
    nr = len(ranks)
    Y = [rank_elements(tau, r) for r in ranks]
    ground = [e for elems in Y for e in elems]
    out_blocks: list[tuple[Element, ...]] = []

    def nonempty_subsets(elems):
        for size in range(1, len(elems) + 1):
            yield from combinations(elems, size)

    def finish():
        used = {e for b in out_blocks for e in b}
        blocks = list(out_blocks) + [(e,) for e in ground if e not in used]
        return _canonical_partition(blocks)

    def open_or_skip(idx, avail):
        yield from rec(idx + 1, None)
        if idx < nr - 1:
            for bottom in nonempty_subsets(avail):
                yield from rec(idx + 1, bottom)

    def rec(idx, open_elems):
        if idx == nr:
            if open_elems is None:
                yield finish()
            return
        elems = Y[idx]
        if open_elems is None:
            yield from open_or_skip(idx, elems)
            return
        if idx < nr - 1:  # absorb the whole rank and keep the block open
            yield from rec(idx + 1, open_elems + elems)
        for top_part in nonempty_subsets(elems):
            out_blocks.append(open_elems + top_part)
            rest = tuple(e for e in elems if e not in top_part)
            yield from open_or_skip(idx, rest)
            out_blocks.pop()

    yield from rec(0, None)


def induced_order_poset(tau, k: int) -> Poset:
    """The order-side elements as a poset (full bipartite between consecutive ranks)."""
    tau = check_tau(tau)
    ell = len(tau)
    elems = tuple(e for r in range(k + 1, ell + 1) for e in rank_elements(tau, r))
    covers = tuple(
        (a, b)
        for r in range(k + 1, ell)
        for a in rank_elements(tau, r)
        for b in rank_elements(tau, r + 1)
    )
    rank = {e: e[0] - k for e in elems}
    return Poset(elems, covers, rank if elems else None)


def is_valid_face_partition(tau, k: int, pi) -> bool:
    """Check a partition of the order side (plus maximum) via the generic validator."""
    ep = extend_poset(induced_order_poset(tau, k))
    t = top_element(tau)
    blocks = [tuple(TOP if e == t else e for e in b) for b in pi]
    blocks.append((BOTTOM,))
    return validate_face_partition(ep, blocks).valid


def _glued_block(pi, yset) -> Block | None:
    """The unique non-singleton block meeting the given rank, if any."""
    hits = [b for b in pi if len(b) > 1 and any(e in yset for e in b)]
    if not hits:
        return None
    if len(hits) > 1:
        raise ValueError("two glued blocks meet one rank; partition is not a face partition")
    return hits[0]


def is_valid_normal_form(nf: FaceNormalForm, tau, k: int) -> tuple[bool, str | None]:
    """Full validity check; returns (ok, reason)."""
    tau = check_tau(tau)
    ell = len(tau)
    if not 0 <= k <= ell:
        return False, "cut out of range"
    ground = order_ground(tau, k)
    flat = [e for b in nf.pi for e in b]
    if sorted(flat) != sorted(ground) or len(set(flat)) != len(flat):
        return False, "pi does not partition the order side"
    if not is_valid_face_partition(tau, k, nf.pi):
        return False, "pi is not a face partition"
    if len(nf.zero_sets) != k:
        return False, "zero_sets must have one entry per chain-side rank"
    for i in range(1, k + 1):
        if not set(nf.zero_sets[i - 1]) <= set(rank_elements(tau, i)):
            return False, f"zero set of rank {i} leaves its rank"
    if nf.eq_sets is None:
        return True, None
    if len(nf.eq_sets) != k + 1:
        return False, "eq_sets must have one entry per rank through the cut"
    all_zeroed = True
    for i in range(1, k + 1):
        rest = set(rank_elements(tau, i)) - set(nf.zero_sets[i - 1])
        eq = set(nf.eq_sets[i - 1])
        if not eq <= rest:
            return False, f"eq set of rank {i} meets its zero set or leaves its rank"
        if rest and not eq:
            return False, f"rank {i} has free elements but an empty eq set"
        if rest:
            all_zeroed = False
    tops = nf.eq_sets[k]
    singleton_blocks = {b[0] for b in nf.pi if len(b) == 1}
    if k == ell:
        if tuple(tops) != (top_element(tau),):
            return False, "tight chains at the full cut must end at the adjoined maximum"
        forced_one = True
    else:
        yk1 = set(rank_elements(tau, k + 1))
        if tops:
            for t in tops:
                if t not in yk1:
                    return False, "chain ends outside the first order rank"
                if t not in singleton_blocks:
                    return False, "chain ends at a non-singleton block element"
            forced_one = False
        else:
            if any(e in singleton_blocks for e in yk1):
                return False, "empty chain end needs the whole first order rank glued upward"
            glued = _glued_block(nf.pi, yk1)
            if glued is None:
                return False, "empty chain end with no glued block"
            forced_one = top_element(tau) in glued
    if all_zeroed and forced_one:
        return False, "all chain ranks zeroed with the chain end pinned to one: empty face"
    return True, None


def codimension(nf: FaceNormalForm, tau, k: int, *, validate: bool = True) -> int:
    """Codimension of the encoded face.

    Without tight chains this is the block-merging deficiency plus the number
    of zeros; with tight chains, one more for the chain equation itself plus
    the size excess of every nonempty eq set.
    """
    if validate:
        ok, reason = is_valid_normal_form(nf, tau, k)
        if not ok:
            raise ValueError(f"invalid normal form: {reason}")
    m = len(order_ground(tau, k))
    codim = (m - len(nf.pi)) + sum(len(z) for z in nf.zero_sets)
    if nf.eq_sets is not None:
        codim += 1 + sum(len(s) - 1 for s in nf.eq_sets if s)
    return codim


def _subsets(elems):
    for size in range(len(elems) + 1):
        yield from combinations(elems, size)


def enumerate_normal_forms(tau, k: int) -> list[FaceNormalForm]:
    """All valid normal forms, canonically sorted.

    Partition enumeration walks interval-block structures only, so everything
    generated is already a face partition; zero and eq choices are filtered by
    the validity rules as they are produced.
    """
    tau = check_tau(tau)
    ell = len(tau)
    if not 0 <= k <= ell:
        raise ValueError(f"k must be in [0, {ell}], got {k}")
    ground = order_ground(tau, k)
    if len(ground) > PARTITION_GROUND_LIMIT:
        raise BudgetError(
            f"order side has {len(ground)} elements; enumeration limit is {PARTITION_GROUND_LIMIT}"
        )
    chain_ranks = [rank_elements(tau, i) for i in range(1, k + 1)]
    yk1 = set(rank_elements(tau, k + 1)) if k < ell else None
    forms: list[FaceNormalForm] = []
    for pi in face_partitions(tau, k):
        if k < ell:
            singles = sorted(e for e in yk1 if (e,) in pi)
            glued = _glued_block(pi, yk1)
            top_options = [tuple(s) for size in range(1, len(singles) + 1) for s in combinations(singles, size)]
            if not singles:
                top_options.append(())
            glued_to_max = glued is not None and top_element(tau) in glued
        else:
            top_options = [(top_element(tau),)]
            glued_to_max = True
        for zeros in product(*[list(_subsets(elems)) for elems in chain_ranks]):
            forms.append(FaceNormalForm(pi, zeros, None))
            eq_choices = []
            all_zeroed = True
            for i, elems in enumerate(chain_ranks):
                rest = tuple(e for e in elems if e not in set(zeros[i]))
                if rest:
                    all_zeroed = False
                    eq_choices.append([tuple(s) for size in range(1, len(rest) + 1) for s in combinations(rest, size)])
                else:
                    eq_choices.append([()])
            for prefix in product(*eq_choices):
                for tops in top_options:
                    forced_one = glued_to_max if (k == ell or not tops) else False
                    if all_zeroed and forced_one:
                        continue  # would cut out the empty face
                    forms.append(FaceNormalForm(pi, zeros, prefix + (tops,)))
    forms.sort(key=FaceNormalForm.sort_key)
    return forms


# ---------------------------------------------------------------------------
# fast f-vector counting
# ---------------------------------------------------------------------------


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, y in enumerate(b):
        out[i] += y
    return out


def _binom_poly(t: int) -> list[int]:
    return [comb(t, j) for j in range(t + 1)]


def _pick_poly(t: int) -> list[int]:
    """Nonempty subset choices of a t-set, graded by size-1."""
    return [comb(t, j + 1) for j in range(t)]


def _chain_rank_poly(t: int) -> list[int]:
    """Zero/eq choices of one chain-side rank of size t, graded by codimension.

    Either the whole rank is zeroed, or a proper zero subset is chosen along
    with a nonempty eq subset of the remainder.
    """
    poly = [0] * (t + 1)
    poly[t] = 1
    for a in range(t):
        sub = _pick_poly(t - a)
        for j, c in enumerate(sub):
            poly[a + j] += comb(t, a) * c
    return poly


def _order_side_classes(tau, k: int) -> list[tuple[list[int], int, bool]]:
    """Partition generating polynomials grouped by the first-order-rank split.

    Returns triples (poly, s, full_glue): poly counts partitions by total
    block-size deficiency, s is the number of first-rank singletons, and
    full_glue marks the classes whose glued block swallows the entire first
    order rank (the only ones where tight chains may end blockwise).
    """
    ell = len(tau)
    sizes = [tau[r - 1] for r in range(k + 2, ell + 1)] + [1]
    closed, open0 = [1], [0]
    for t in reversed(sizes):
        opened = [0] + _pick_poly(t)  # nonempty bottom subsets, graded by size
        new_closed = _poly_add(closed, _poly_mul(opened, open0))
        # keep absorbing, or close with a nonempty top part and maybe reopen
        new_open0 = _poly_mul([0] * t + [1], open0)
        close_then = [0] * max(t, 1)
        for b in range(1, t + 1):
            coeff = comb(t, b)
            term = closed[:]
            if t - b >= 1:
                term = _poly_add(term, _poly_mul([0] + _pick_poly(t - b), open0))
            for j, c in enumerate(term):
                while b - 1 + j >= len(close_then):
                    close_then.append(0)
                close_then[b - 1 + j] += coeff * c
        new_open0 = _poly_add(new_open0, close_then)
        closed, open0 = new_closed, new_open0
    t1 = tau[k]
    classes: list[tuple[list[int], int, bool]] = [(closed, t1, False)]
    for a in range(1, t1 + 1):
        poly = [0] * a + [comb(t1, a)]
        classes.append((_poly_mul(poly, open0), t1 - a, a == t1))
    return classes


def f_vector_normal_form(tau, k: int) -> tuple[int, ...]:
    """f-vector of the chain-order polytope at cut k, by counting normal forms.

    Choices factor: a face partition of the order side, independent zero/eq
    data per chain-side rank, and the chain-end choice coupled only to the
    partition through its first-order-rank statistics.  Everything is counted
    by codimension with integer polynomial arithmetic, so this scales far
    beyond explicit enumeration.  The single overdetermined combination (all
    chain ranks zeroed, chain end pinned to one) lands at codimension n+1 and
    is removed; its coefficient is asserted to be exactly 1.
    """
    tau = check_tau(tau)
    ell = len(tau)
    if not 0 <= k <= ell:
        raise ValueError(f"k must be in [0, {ell}], got {k}")
    n = sum(tau)
    chain_prod = [1]
    for i in range(k):
        chain_prod = _poly_mul(chain_prod, _chain_rank_poly(tau[i]))
    if k == ell:
        part_total = [1]
        tops_total = [1]  # the adjoined maximum is the only possible chain end
        chains_core = chain_prod
    else:
        classes = _order_side_classes(tau, k)
        part_total = [0]
        tops_total = [0]
        for poly, s, full_glue in classes:
            part_total = _poly_add(part_total, poly)
            tops = _pick_poly(s)
            if full_glue:
                tops = _poly_add(tops, [1])
            tops_total = _poly_add(tops_total, _poly_mul(poly, tops))
        chains_core = _poly_mul(chain_prod, tops_total)
    no_chains = _poly_mul(_binom_poly(sum(tau[:k])), part_total)
    total = _poly_add(no_chains, [0] + chains_core)
    while len(total) <= n + 1:
        total.append(0)
    if total[n + 1] != 1 or any(total[d] for d in range(n + 2, len(total))):
        raise AssertionError("normal-form count has unexpected high-codimension terms")
    if total[0] != 1:
        raise AssertionError("normal-form count lost the whole polytope")
    return tuple(total[n - i] for i in range(n))


# ---------------------------------------------------------------------------
# the cut-raising injection
# ---------------------------------------------------------------------------


def psi_map(nf: FaceNormalForm, tau, k: int) -> FaceNormalForm:
    """Image of a face at cut k as a face at cut k+1, of equal codimension.

    Blocks contained in the two ranks around the cut are dropped, all other
    blocks lose their rank-(k+1) part, and the freed data is re-expressed as
    zeros and chain ends one level higher.  Defined for codimension >= 2.
    """
    tau = check_tau(tau)
    ell = len(tau)
    if k >= ell:
        raise ValueError("the cut can only be raised below the top rank")
    cod = codimension(nf, tau, k)
    if cod < 2:
        raise ValueError("the injection is defined for codimension at least 2")
    tmax = top_element(tau)
    yk1 = set(rank_elements(tau, k + 1))
    yk2 = set(rank_elements(tau, k + 2)) if k + 2 <= ell else {tmax}

    kept = []
    for b in nf.pi:
        bs = set(b)
        if bs <= yk1 | yk2:
            continue
        kept.append(tuple(e for e in b if e not in yk1))
    ground2 = order_ground(tau, k + 1)
    used = {e for b in kept for e in b}
    pi2 = _canonical_partition(kept + [(e,) for e in ground2 if e not in used])

    glued = _glued_block(nf.pi, yk1)
    a_part = tuple(sorted(set(glued) & yk1)) if glued else ()
    b_part = tuple(sorted(set(glued) & yk2)) if glued else ()
    height1 = glued is not None and max(e[0] for e in glued) == k + 2

    if nf.eq_sets is not None:
        if glued is None:
            # every rank-(k+1) element is isolated: extend the chains upward
            sigma = sorted(e for e in yk2 if (e,) in nf.pi)
            tops2 = (sigma[0],) if sigma else ()
            return FaceNormalForm(pi2, nf.zero_sets + ((),), nf.eq_sets + (tops2,))
        tops2 = b_part if height1 else ()
        return FaceNormalForm(pi2, nf.zero_sets + (a_part,), nf.eq_sets + (tops2,))

    if glued is None:
        return FaceNormalForm(pi2, nf.zero_sets + ((),), None)
    if not height1:
        return FaceNormalForm(pi2, nf.zero_sets + (a_part,), None)
    # height-one glued block: its top part lands in singletons after the cut
    sigma2 = sorted([e for e in yk2 if (e,) in nf.pi] + list(b_part))
    if b_part == (sigma2[0],):
        return FaceNormalForm(pi2, nf.zero_sets + (a_part,), None)
    # re-encode the block as a bundle of tight chains through least-index picks
    eq_new = []
    for i in range(1, k + 1):
        rest = sorted(set(rank_elements(tau, i)) - set(nf.zero_sets[i - 1]))
        eq_new.append((rest[0],) if rest else ())
    eq2 = tuple(eq_new) + (a_part, b_part)
    return FaceNormalForm(pi2, nf.zero_sets + ((),), eq2)


@dataclass
class InjectionReport:
    tau: tuple[int, ...]
    k: int
    per_codim_counts_src: dict[int, int]
    per_codim_counts_img: dict[int, int]
    injective: bool
    codim_preserved: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.injective and self.codim_preserved and not self.failures


def verify_injection(tau, k: int) -> InjectionReport:
    """Apply the cut-raising map to every face of codimension >= 2 and audit it.

    Checks image validity, codimension preservation, and pairwise distinctness
    of images; failures are collected in the report rather than raised.
    """
    tau = check_tau(tau)
    ell = len(tau)
    if k >= ell:
        raise ValueError("verification needs a cut below the top rank")
    n = sum(tau)
    src_counts: dict[int, int] = {}
    img_counts: dict[int, int] = {}
    f_next = f_vector_normal_form(tau, k + 1)
    for c in range(2, n + 1):
        img_counts[c] = f_next[n - c]
    injective = True
    preserved = True
    failures: list[str] = []
    seen: dict[FaceNormalForm, FaceNormalForm] = {}
    for nf in enumerate_normal_forms(tau, k):
        cod = codimension(nf, tau, k, validate=False)
        if cod < 2:
            continue
        src_counts[cod] = src_counts.get(cod, 0) + 1
        img = psi_map(nf, tau, k)
        ok, reason = is_valid_normal_form(img, tau, k + 1)
        if not ok:
            failures.append(f"invalid image of {nf}: {reason}")
            continue
        cod2 = codimension(img, tau, k + 1, validate=False)
        if cod2 != cod:
            preserved = False
            failures.append(f"codimension changed {cod} -> {cod2} on {nf}")
        if img in seen:
            injective = False
            failures.append(f"collision: {seen[img]} and {nf} share an image")
        else:
            seen[img] = nf
    return InjectionReport(tau, k, src_counts, img_counts, injective, preserved, failures)


@dataclass
class MonotoneReport:
    tau: tuple[int, ...]
    f_vectors: dict[int, tuple[int, ...]]
    monotone: bool
    failures: list[str] = field(default_factory=list)


def verify_monotone(tau) -> MonotoneReport:
    """f-vectors for every cut, with a componentwise monotonicity audit."""
    tau = check_tau(tau)
    fvs = {k: f_vector_normal_form(tau, k) for k in range(len(tau) + 1)}
    failures = []
    for k in range(len(tau)):
        for i, (lo, hi) in enumerate(zip(fvs[k], fvs[k + 1])):
            if lo > hi:
                failures.append(f"f_{i} drops from {lo} to {hi} between cuts {k} and {k + 1}")
    return MonotoneReport(tau, fvs, not failures, failures)


def face_vertex_indices(nf: FaceNormalForm, tau, k: int, vertices) -> frozenset[int]:
    """Indices of the 0/1 vertices lying on the face encoded by a normal form.

    Vertex coordinates follow the rank-major element order of the poset.  Used
    to match normal forms against geometrically enumerated faces.
    """
    tau = check_tau(tau)
    p = make_maximal_ranked(tau)
    pos = p.index
    tmax = top_element(tau)
    if nf.eq_sets is not None:
        tops = nf.eq_sets[k]
        if not tops:
            tops = tuple(sorted(set(_glued_block(nf.pi, set(rank_elements(tau, k + 1)))) & set(rank_elements(tau, k + 1))))
    hits = []
    for vi, x in enumerate(vertices):

        def val(e):
            return 1 if e == tmax else x[pos[e]]

        ok = True
        for b in nf.pi:
            vals = {val(e) for e in b}
            if len(vals) > 1:
                ok = False
                break
        if ok:
            for zs in nf.zero_sets:
                if any(val(e) != 0 for e in zs):
                    ok = False
                    break
        if ok and nf.eq_sets is not None:
            total = 0
            for i in range(1, k + 1):
                eq = nf.eq_sets[i - 1]
                if eq:
                    vals = {val(e) for e in eq}
                    if len(vals) > 1:
                        ok = False
                        break
                    total += vals.pop()
            if ok:
                tvals = {val(e) for e in tops}
                if len(tvals) > 1 or total != tvals.pop():
                    ok = False
        if ok:
            hits.append(vi)
    return frozenset(hits)
