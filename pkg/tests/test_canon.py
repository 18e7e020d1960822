from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
from hypothesis import given
from hypothesis import strategies as st

from planturan.canon import automorphism_generators, canonical_form, canonical_labelling
from planturan.graph import Graph, build_graph, complete_graph, cycle_graph
from strategies import graphs


def _all_labelled(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield build_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def test_class_counts_match_known_values():
    # number of graphs on n unlabelled vertices
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34}
    for n, count in expected.items():
        assert len({canonical_form(g) for g in _all_labelled(n)}) == count


@given(graphs(max_n=9), st.randoms(use_true_random=False))
def test_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@given(graphs(max_n=8), graphs(max_n=8))
def test_agrees_with_networkx_isomorphism(g, h):
    if g.n != h.n:
        return
    gx, hx = nx.Graph(), nx.Graph()
    gx.add_nodes_from(range(g.n))
    hx.add_nodes_from(range(h.n))
    gx.add_edges_from(g.edges())
    hx.add_edges_from(h.edges())
    assert (canonical_form(g) == canonical_form(h)) == nx.is_isomorphic(gx, hx)


@given(graphs(max_n=9))
def test_generators_are_automorphisms(g):
    edges = set(g.edges())
    for perm in automorphism_generators(g):
        assert {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges} == edges


def test_highly_symmetric_graphs():
    petersen = build_graph(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])
    rng = random.Random(3)
    for g in (complete_graph(8), cycle_graph(10), petersen, Graph.from_masks([0] * 7)):
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical_form(g) == canonical_form(g.relabel(perm))
    assert canonical_labelling(build_graph(0, [])).order == ()
