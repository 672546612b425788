"""Finite posets stored by their covering relations.

Elements are arbitrary hashable ids kept in a fixed order; every set-valued
result is reported in that order, so all outputs are deterministic.  Maximal
ranked posets use ids ``(rank, index)`` with both components 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

from .cliques import Graph

Element = Any
Block = tuple[Element, ...]


class _Extreme:
    """Sentinel id for the adjoined bottom/top of an extended poset."""

    def __init__(self, label: str):
        self.label = label

    def __repr__(self) -> str:
        return self.label


BOTTOM = _Extreme("<bottom>")
TOP = _Extreme("<top>")


def check_tau(tau: Sequence[int]) -> tuple[int, ...]:
    """Validate a tuple of rank sizes: nonempty, all parts >= 1."""
    tau = tuple(tau)
    if not tau:
        raise ValueError("tau must have at least one part")
    if any(not isinstance(t, int) or t < 1 for t in tau):
        raise ValueError(f"tau parts must be positive integers, got {tau}")
    return tau


@dataclass(frozen=True)
class Poset:
    """Immutable finite poset given by a transitively reduced cover DAG."""

    elements: tuple
    covers: tuple[tuple[Element, Element], ...]
    rank_of: Any = None  # optional mapping element -> positive rank

    def __post_init__(self):
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("duplicate elements")
        for p, q in self.covers:
            if p not in idx or q not in idx:
                raise ValueError(f"cover ({p!r}, {q!r}) uses unknown element")
            if p == q:
                raise ValueError("self-cover")
        if len(set(self.covers)) != len(self.covers):
            raise ValueError("duplicate cover pairs")
        object.__setattr__(self, "covers", tuple(sorted(self.covers, key=lambda c: (idx[c[0]], idx[c[1]]))))
        self._validate(idx)

    def _validate(self, idx):
        n = len(self.elements)
        up = [[] for _ in range(n)]
        indeg = [0] * n
        for p, q in self.covers:
            up[idx[p]].append(idx[q])
            indeg[idx[q]] += 1
        order = [i for i in range(n) if indeg[i] == 0]
        seen = 0
        deg = indeg[:]
        queue = list(order)
        topo = []
        while queue:
            i = queue.pop()
            topo.append(i)
            seen += 1
            for j in up[i]:
                deg[j] -= 1
                if deg[j] == 0:
                    queue.append(j)
        if seen != n:
            raise ValueError("cover relation has a directed cycle")
        # strictly-above masks, for the reduction check
        above = [0] * n
        for i in reversed(topo):
            m = 0
            for j in up[i]:
                m |= (1 << j) | above[j]
            above[i] = m
        for p, q in self.covers:
            i, j = idx[p], idx[q]
            for w in up[i]:
                if w != j and (above[w] >> j) & 1:
                    raise ValueError(f"cover ({p!r}, {q!r}) is implied; covers must be reduced")
        if self.rank_of is not None:
            for p, q in self.covers:
                if self.rank_of[q] != self.rank_of[p] + 1:
                    raise ValueError(f"rank jump on cover ({p!r}, {q!r}); poset is not ranked")

    @property
    def n(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def up_covers(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for p, q in self.covers:
            adj[self.index[p]].append(self.index[q])
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def down_covers(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for p, q in self.covers:
            adj[self.index[q]].append(self.index[p])
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def above_masks(self) -> tuple[int, ...]:
        """Bitmask of positions strictly above each position."""
        n = self.n
        above = [0] * n
        for i in self._topo_reverse:
            m = 0
            for j in self.up_covers[i]:
                m |= (1 << j) | above[j]
            above[i] = m
        return tuple(above)

    @cached_property
    def _topo_reverse(self) -> tuple[int, ...]:
        n = self.n
        indeg = [len(self.down_covers[i]) for i in range(n)]
        queue = [i for i in range(n) if indeg[i] == 0]
        topo = []
        while queue:
            i = queue.pop()
            topo.append(i)
            for j in self.up_covers[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        return tuple(reversed(topo))

    def less(self, p: Element, q: Element) -> bool:
        """Strict order comparison."""
        return bool((self.above_masks[self.index[p]] >> self.index[q]) & 1)

    def minimal_elements(self) -> tuple:
        return tuple(e for i, e in enumerate(self.elements) if not self.down_covers[i])

    def maximal_elements(self) -> tuple:
        return tuple(e for i, e in enumerate(self.elements) if not self.up_covers[i])


@dataclass(frozen=True)
class ExtendedPoset:
    """A poset together with an adjoined global bottom and top."""

    base: Poset
    bottom: Element
    top: Element

    @property
    def elements(self) -> tuple:
        return (self.bottom,) + self.base.elements + (self.top,)

    @cached_property
    def covers(self) -> tuple[tuple[Element, Element], ...]:
        mins = self.base.minimal_elements()
        maxs = self.base.maximal_elements()
        if not self.base.elements:
            return ((self.bottom, self.top),)
        return (
            tuple((self.bottom, m) for m in mins)
            + self.base.covers
            + tuple((m, self.top) for m in maxs)
        )

    @cached_property
    def as_poset(self) -> Poset:
        rank = None
        if self.base.rank_of is not None:
            top_rank = 1 + max(self.base.rank_of.values(), default=0)
            rank = {self.bottom: 0, self.top: top_rank}
            rank.update(self.base.rank_of)
            # adjoined bounds break the unit-rank-step rule in general
            if any(rank[q] != rank[p] + 1 for p, q in self.covers):
                rank = None
        return Poset(self.elements, self.covers, rank)


@dataclass(frozen=True)
class KDecomposition:
    """Split of a maximal ranked poset at a cut rank: chain part below, order part above."""

    tau: tuple[int, ...]
    k: int
    chain_part: frozenset
    order_part: frozenset


@dataclass(frozen=True)
class PartitionCheck:
    valid: bool
    reason: str | None = None


def make_maximal_ranked(tau: Sequence[int]) -> Poset:
    """Ranked poset with tau_i elements at rank i and all cross-rank pairs comparable."""
    tau = check_tau(tau)
    elements = tuple((i, t) for i in range(1, len(tau) + 1) for t in range(1, tau[i - 1] + 1))
    covers = tuple(
        ((i, t), (i + 1, s))
        for i in range(1, len(tau))
        for t in range(1, tau[i - 1] + 1)
        for s in range(1, tau[i] + 1)
    )
    rank = {e: e[0] for e in elements}
    return Poset(elements, covers, rank)


def k_decomposition(tau: Sequence[int], k: int) -> KDecomposition:
    tau = check_tau(tau)
    if not 0 <= k <= len(tau):
        raise ValueError(f"k must be in [0, {len(tau)}], got {k}")
    chain = frozenset((i, t) for i in range(1, k + 1) for t in range(1, tau[i - 1] + 1))
    order = frozenset((i, t) for i in range(k + 1, len(tau) + 1) for t in range(1, tau[i - 1] + 1))
    return KDecomposition(tau, k, chain, order)


def extend_poset(p: Poset) -> ExtendedPoset:
    """Adjoin a new bottom below all minima and a new top above all maxima."""
    return ExtendedPoset(p, BOTTOM, TOP)


def maximal_chains(ep: ExtendedPoset) -> list[list]:
    """All maximal chains of the base poset, as rank-increasing element lists.

    Chains are found by depth-first search from the adjoined bottom to the
    adjoined top; the bounds themselves are stripped from the output.  The
    result is in lexicographic order with respect to element positions.
    """
    p = ep.as_poset
    bot, top = p.index[ep.bottom], p.index[ep.top]
    chains: list[list] = []
    path: list[int] = []

    def dfs(i: int) -> None:
        if i == top:
            if path:
                chains.append([p.elements[j] for j in path])
            return
        if i != bot:
            path.append(i)
        for j in p.up_covers[i]:
            dfs(j)
        if i != bot:
            path.pop()

    dfs(bot)
    return chains


def comparability_graph(p: Poset) -> Graph:
    """Undirected graph joining every comparable pair."""
    adj = [0] * p.n
    for i in range(p.n):
        m = p.above_masks[i]
        adj[i] |= m
        while m:
            low = m & -m
            adj[low.bit_length() - 1] |= 1 << i
            m ^= low
    return Graph(p.n, tuple(adj))


def maximal_antichains(p: Poset) -> list[tuple]:
    """Maximal antichains, via maximal independent sets of the comparability graph."""
    from .cliques import maximal_independent_sets

    return [
        tuple(p.elements[i] for i in iset)
        for iset in maximal_independent_sets(comparability_graph(p))
    ]


def _check_partition(ground: Sequence, blocks: Iterable[Iterable]) -> list[tuple]:
    """Normalize a partition of the ground set; raise on malformed input."""
    ground_set = set(ground)
    norm = [tuple(b) for b in blocks]
    seen: set = set()
    for b in norm:
        if not b:
            raise ValueError("empty block")
        for e in b:
            if e not in ground_set:
                raise ValueError(f"block element {e!r} outside ground set")
            if e in seen:
                raise ValueError(f"element {e!r} in two blocks")
            seen.add(e)
    if seen != ground_set:
        missing = ground_set - seen
        raise ValueError(f"partition does not cover ground set (missing {sorted(map(repr, missing))})")
    return norm


def _block_connected(p: Poset, members: Sequence[int]) -> bool:
    """Connectivity of a block in the Hasse diagram of its induced subposet."""
    if len(members) == 1:
        return True
    mset = set(members)
    # induced strict order, then drop implied pairs to get induced covers
    less = {(a, b) for a in members for b in members if (p.above_masks[a] >> b) & 1}
    adj = {a: set() for a in members}
    for a, b in less:
        if any((a, c) in less and (c, b) in less for c in mset):
            continue
        adj[a].add(b)
        adj[b].add(a)
    stack = [members[0]]
    reached = {members[0]}
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                stack.append(y)
    return len(reached) == len(members)


def _block_digraph_acyclic(p: Poset, blocks: Sequence[Sequence[int]]) -> bool:
    nb = len(blocks)
    block_of = {}
    for bi, b in enumerate(blocks):
        for e in b:
            block_of[e] = bi
    succ = [set() for _ in range(nb)]
    for bi, b in enumerate(blocks):
        for a in b:
            m = p.above_masks[a]
            while m:
                low = m & -m
                j = low.bit_length() - 1
                m ^= low
                if block_of[j] != bi:
                    succ[bi].add(block_of[j])
    indeg = [0] * nb
    for bi in range(nb):
        for bj in succ[bi]:
            indeg[bj] += 1
    queue = [i for i in range(nb) if indeg[i] == 0]
    seen = 0
    while queue:
        i = queue.pop()
        seen += 1
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    return seen == nb


def validate_face_partition(ep: ExtendedPoset, pi: Iterable[Iterable]) -> PartitionCheck:
    """Check the three face-partition conditions on an extended poset.

    A partition encodes a face when (a) every block is connected as an induced
    subposet, (b) the relation between distinct blocks is acyclic, and (c) the
    adjoined bottom and top lie in different blocks.  A partition that fails to
    cover the ground set is a malformed input and raises ValueError instead.
    """
    p = ep.as_poset
    blocks = _check_partition(p.elements, pi)
    pos_blocks = [[p.index[e] for e in b] for b in blocks]
    for b in pos_blocks:
        if not _block_connected(p, b):
            return PartitionCheck(False, "block not connected")
    # a block merging the extremes also breaks compatibility whenever anything
    # lies between them; report the more specific reason first
    bot, top = p.index[ep.bottom], p.index[ep.top]
    for b in pos_blocks:
        if bot in b and top in b:
            return PartitionCheck(False, "bottom and top share a block")
    if not _block_digraph_acyclic(p, pos_blocks):
        return PartitionCheck(False, "block relation has a cycle")
    return PartitionCheck(True)


def quotient_by_partition(p: Poset, pi: Iterable[Iterable]) -> Poset:
    """Poset of blocks under the transitive closure of the block relation.

    Requires a compatible partition (acyclic block relation); the resulting
    order is re-reduced to covers.
    """
    blocks = _check_partition(p.elements, pi)
    pos_blocks = [[p.index[e] for e in b] for b in blocks]
    if not _block_digraph_acyclic(p, pos_blocks):
        raise ValueError("partition is not compatible (block relation has a cycle)")
    order = sorted(range(len(blocks)), key=lambda bi: min(pos_blocks[bi]))
    names = [tuple(sorted(blocks[bi], key=lambda e: p.index[e])) for bi in order]
    nb = len(order)
    strict = [[False] * nb for _ in range(nb)]
    for a in range(nb):
        for b in range(nb):
            if a != b and any(
                (p.above_masks[x] >> y) & 1 for x in pos_blocks[order[a]] for y in pos_blocks[order[b]]
            ):
                strict[a][b] = True
    for m in range(nb):  # transitive closure
        for a in range(nb):
            if strict[a][m]:
                for b in range(nb):
                    if strict[m][b]:
                        strict[a][b] = True
    covers = []
    for a in range(nb):
        for b in range(nb):
            if strict[a][b] and not any(strict[a][c] and strict[c][b] for c in range(nb)):
                covers.append((names[a], names[b]))
    return Poset(tuple(names), tuple(covers))


def has_hl_pattern(p: Poset) -> bool:
    """Whether some element has at least two lower and two upper covers.

    This is the local obstruction separating the order polytope from the chain
    polytope up to affine isomorphism.
    """
    return any(
        len(p.down_covers[i]) >= 2 and len(p.up_covers[i]) >= 2 for i in range(p.n)
    )


def as_tau_shape(p: Poset) -> tuple[int, ...] | None:
    """Recognize a maximal ranked poset; return its rank sizes, else None."""
    if p.n == 0:
        return None
    # longest-path levels from the minima
    level = [0] * p.n
    for i in reversed(p._topo_reverse):
        for j in p.down_covers[i]:
            level[i] = max(level[i], level[j] + 1)
    nlev = max(level) + 1
    sizes = [0] * nlev
    for lv in level:
        sizes[lv] += 1
    for x, y in p.covers:
        if level[p.index[y]] != level[p.index[x]] + 1:
            return None
    expected = sum(sizes[i] * sizes[i + 1] for i in range(nlev - 1))
    if len(p.covers) != expected:
        return None
    return tuple(sizes)


def element_name(e: Element) -> str:
    """Stable printable id; rank-indexed elements render as ``y<rank>_<index>``."""
    if isinstance(e, tuple) and len(e) == 2 and all(isinstance(x, int) for x in e):
        return f"y{e[0]}_{e[1]}"
    return str(e)


def poset_to_json(p: Poset) -> str:
    data = {
        "elements": [element_name(e) for e in p.elements],
        "covers": [[element_name(a), element_name(b)] for a, b in p.covers],
    }
    return json.dumps(data, indent=2, sort_keys=True)


def poset_from_json(text: str) -> Poset:
    data = json.loads(text)
    elements = tuple(data["elements"])
    covers = tuple((a, b) for a, b in data["covers"])
    return Poset(elements, covers)
