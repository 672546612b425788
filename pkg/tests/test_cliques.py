import random

import pytest
from conftest import brute_force_antichain_subsets, compositions_upto

from chainorder.cliques import Graph, complement, maximal_cliques, maximal_independent_sets
from chainorder.posets import comparability_graph, make_maximal_ranked


def test_complete_bipartite_independent_sets_are_sides():
    g = comparability_graph(make_maximal_ranked((2, 2)))
    assert maximal_independent_sets(g) == [(0, 1), (2, 3)]


def test_edgeless_graph_single_set():
    g = Graph.from_edges(3, [])
    assert maximal_independent_sets(g) == [(0, 1, 2)]


def test_path_graph():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    got = maximal_independent_sets(g)
    # oracle: inclusion-maximal among all independent subsets
    indep = brute_force_antichain_subsets(3, [(0, 1), (1, 2)])
    maximal = {s for s in indep if not any(s < t for t in indep)}
    assert set(map(frozenset, got)) == maximal
    assert got == [(0, 2), (1,)]


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, (1, 1))  # self-loop at vertex 0
    with pytest.raises(ValueError):
        Graph(2, (2, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(129, tuple([0] * 129))


def test_output_sets_are_independent_and_maximal():
    rng = random.Random(7)
    for trial in range(30):
        n = rng.randrange(1, 13)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        g = Graph.from_edges(n, edges)
        sets = maximal_independent_sets(g)
        for s in sets:
            for a in s:
                assert all(not ((g.adj[a] >> b) & 1) for b in s)
            outside = set(range(n)) - set(s)
            for v in outside:
                assert any((g.adj[v] >> b) & 1 for b in s), "set is extendable"
        assert len(set(sets)) == len(sets)
        assert sets == sorted(sets)


def test_against_subset_oracle_small_graphs():
    rng = random.Random(11)
    for trial in range(25):
        n = rng.randrange(1, 17)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
        g = Graph.from_edges(n, edges)
        indep = brute_force_antichain_subsets(n, edges)
        want = {s for s in indep if not any(s < t for t in indep)}
        got = set(map(frozenset, maximal_independent_sets(g)))
        assert got == want


def test_maximal_ranked_independent_sets_are_ranks():
    for tau in compositions_upto(10):
        p = make_maximal_ranked(tau)
        sets = maximal_independent_sets(comparability_graph(p))
        offsets = []
        start = 0
        for size in tau:
            offsets.append(tuple(range(start, start + size)))
            start += size
        assert sets == sorted(offsets), tau


def test_cliques_are_complement_independent_sets():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert maximal_cliques(complement(g)) == maximal_independent_sets(g)
