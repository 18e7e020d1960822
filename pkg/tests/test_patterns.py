from __future__ import annotations

import pytest
from hypothesis import given

from planturan.constructions import stellated_triangulation
from planturan.graph import build_graph, complete_graph, cycle_graph, path_graph
from planturan.oracles import naive_circumference, naive_cycles, naive_has_pattern
from planturan.patterns import (
    C3C4,
    TWO_C4,
    BudgetExceeded,
    CyclePattern,
    circumference,
    cycles_of_length,
    find_disjoint_cycles,
    is_pattern_free,
    longest_cycle,
    vertex_connectivity_at_least,
)
from strategies import graphs, planar_graphs

PETERSEN = build_graph(
    10,
    [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
)


def test_pattern_parsing():
    assert CyclePattern.parse("4,3") == C3C4
    assert str(TWO_C4) == "4,4"
    assert C3C4.order == 7
    with pytest.raises(ValueError):
        CyclePattern.parse("2,5")
    with pytest.raises(ValueError):
        CyclePattern.parse("a")


def test_k7_contains_c3c4_with_valid_witness():
    g = complete_graph(7)
    w = find_disjoint_cycles(g, C3C4)
    assert w is not None and w.validate(g, C3C4)
    assert not w.validate(g, TWO_C4)


def test_small_graphs_are_free():
    assert is_pattern_free(complete_graph(6), C3C4)
    assert is_pattern_free(complete_graph(7), TWO_C4)
    assert not is_pattern_free(complete_graph(8), TWO_C4)


@given(graphs(max_n=9))
def test_detector_matches_naive_oracle(g):
    for pattern in (C3C4, TWO_C4):
        w = find_disjoint_cycles(g, pattern)
        assert (w is not None) == naive_has_pattern(g, pattern.lengths)
        if w is not None:
            assert w.validate(g, pattern)


@given(planar_graphs(min_n=7, max_n=10))
def test_detector_matches_naive_oracle_on_planar(g):
    for pattern in (C3C4, TWO_C4):
        assert is_pattern_free(g, pattern) == (not naive_has_pattern(g, pattern.lengths))


@given(graphs(max_n=8))
def test_cycle_listing_matches_oracle(g):
    for k in (3, 4, 5):
        assert len(cycles_of_length(g, k)) == len(naive_cycles(g, k))


def test_cycle_counts_known():
    k4 = complete_graph(4)
    assert len(cycles_of_length(k4, 3)) == 4
    assert len(cycles_of_length(k4, 4)) == 3
    assert len(cycles_of_length(cycle_graph(6), 6)) == 1
    assert all(0 not in c for c in cycles_of_length(k4, 3, avoid=[0]))
    assert len(cycles_of_length(k4, 3, avoid=[0])) == 1


@given(graphs(max_n=8))
def test_circumference_matches_oracle(g):
    res = circumference(g)
    assert res.complete
    assert res.length == naive_circumference(g)
    if res.length:
        c = res.cycle
        assert len(set(c)) == len(c) == res.length
        assert all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def test_circumference_known_values():
    assert longest_cycle(PETERSEN) == 9
    assert longest_cycle(complete_graph(4)) == 4
    assert longest_cycle(path_graph(6)) == 0
    assert longest_cycle(stellated_triangulation(1).graph) == 7


def test_budget_exhaustion_reported():
    g = stellated_triangulation(2).graph
    res = circumference(g, budget=5)
    assert not res.complete and res.nodes > 5
    with pytest.raises(BudgetExceeded) as exc:
        longest_cycle(g, budget=5)
    assert exc.value.lower_bound == res.length


def test_vertex_connectivity():
    assert vertex_connectivity_at_least(complete_graph(4), 3)
    assert not vertex_connectivity_at_least(path_graph(5), 2)
    assert vertex_connectivity_at_least(cycle_graph(5), 2)
    assert not vertex_connectivity_at_least(cycle_graph(5), 3)
    with pytest.raises(ValueError):
        vertex_connectivity_at_least(complete_graph(3), 3)
