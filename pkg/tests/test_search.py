from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from planturan.canon import canonical_form
from planturan.constructions import matching_join
from planturan.graph import decode_graph6
from planturan.oracles import naive_has_pattern, naive_planar_classes, naive_planar_turan
from planturan.patterns import C3C4, TWO_C4, find_disjoint_cycles
from planturan.embedding import is_planar
from planturan.search import (
    MAX_N,
    FormulaCheck,
    FormulaError,
    SearchLimitError,
    enumerate_planar,
    parse_formula,
    planar_turan,
    report_json,
    triangulations,
    verify_formula,
)

# numbers of planar graphs on n unlabelled vertices
PLANAR_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 33, 6: 142, 7: 822}
TRIANGULATION_COUNTS = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14, 9: 50}


@pytest.mark.parametrize("n", range(4, 10))
def test_triangulation_counts(n):
    assert len(triangulations(n)) == TRIANGULATION_COUNTS[n]


@pytest.mark.parametrize("n", range(3, 8))
def test_enumerate_planar_counts(n):
    graphs = list(enumerate_planar(n))
    assert len(graphs) == PLANAR_COUNTS[n]
    assert len({canonical_form(g) for g in graphs}) == len(graphs)
    assert all(is_planar(g) for g in graphs)


def test_enumerate_planar_min_edges():
    assert [g.m for g in enumerate_planar(5, min_edges=9)] == [9]


@pytest.mark.parametrize("n", range(3, 7))
def test_enumerate_planar_matches_naive_classes(n):
    fast = {}
    for g in enumerate_planar(n):
        fast[g.m] = fast.get(g.m, 0) + 1
    naive = {m: len(level) for m, level in enumerate(naive_planar_classes(n)) if level}
    assert fast == naive


@pytest.mark.parametrize("pattern", [C3C4, TWO_C4], ids=str)
@pytest.mark.parametrize("n", range(4, 8))
def test_planar_turan_matches_oracle(n, pattern):
    report = planar_turan(n, pattern, jobs=1)
    value, graphs = naive_planar_turan(n, pattern.lengths)
    assert report.max_edges == value
    assert report.witness_count == len(graphs)
    assert report.witnesses == sorted(report.witnesses)
    naive_codes = {canonical_form(g) for g in graphs}
    assert {canonical_form(decode_graph6(w)) for w in report.witnesses} == naive_codes


@pytest.mark.parametrize("n", range(4, 7))
def test_small_values_are_triangulations(n):
    assert planar_turan(n, C3C4).max_edges == 3 * n - 6


def test_witnesses_are_free_and_extremal():
    report = planar_turan(8, TWO_C4, jobs=1)
    assert report.max_edges == 17
    for w in report.witnesses:
        g = decode_graph6(w)
        assert g.m == 17 and is_planar(g)
        assert find_disjoint_cycles(g, TWO_C4) is None
        # every single added edge breaks freeness or planarity
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not g.has_edge(u, v):
                    h = g.add_edge(u, v)
                    assert not is_planar(h) or naive_has_pattern(h, (4, 4))


def test_search_is_deterministic_across_jobs():
    a = planar_turan(7, C3C4, jobs=1)
    b = planar_turan(7, C3C4, jobs=2)
    assert a.summary() == b.summary()
    assert '"max_edges": 14' in report_json(a)
    assert a.csv_row().startswith('7,"3,4",14,1,21,')


def test_search_refuses_large_n():
    with pytest.raises(SearchLimitError):
        planar_turan(MAX_N + 1, C3C4)
    with pytest.raises(SearchLimitError):
        list(enumerate_planar(MAX_N + 1))


def test_level_statistics():
    report = planar_turan(7, C3C4, jobs=1)
    assert report.levels[0].edges == 15
    assert report.levels[-1].edges == 14 and report.levels[-1].pattern_free == 1
    assert report.graphs_examined == sum(s.classes for s in report.levels)


# formulas ------------------------------------------------------------------


def test_parse_formula_values():
    f = parse_formula("floor(5*n/2) - 4")
    assert [f(n) for n in (20, 21)] == [46, 48]
    assert parse_formula("max(3*n-6, 2*n)")(4) == 8
    assert parse_formula("ceil(n/3) + n % 2 + n // 4 + 2**2 - -1")(7) == 3 + 1 + 1 + 4 + 1


@pytest.mark.parametrize("bad", ["n +", "import os", "n.real", "x + 1", "f(n)", "1.5 * n", "floor(n, key=1)"])
def test_parse_formula_rejects(bad):
    with pytest.raises(FormulaError):
        parse_formula(bad)


def test_formula_non_integer_value_reported_per_n():
    f = parse_formula("n / 3")
    assert f(6) == 2
    with pytest.raises(FormulaError, match="not an integer"):
        f(7)
    with pytest.raises(FormulaError, match="divides by zero"):
        parse_formula("n // (n - 5)")(5)


@given(st.integers(4, 500))
def test_matching_join_meets_formula(n):
    assert matching_join(n).graph.m == parse_formula("floor(5*n/2) - 4")(n)


def test_verify_formula_relations():
    checks = verify_formula([6, 8], C3C4, "floor(5*n/2) - 4", jobs=1)
    assert [(c.searched, c.formula) for c in checks] == [(12, 11), (16, 16)]
    assert [c.relation for c in checks] == ["above", "equal"]
    assert FormulaCheck(9, 18, 20).relation == "below"
    assert FormulaCheck(9, 18, 20).to_json()["relation"] == "below"


def test_formula_equal_below_seven():
    assert {c.relation for c in verify_formula(range(4, 7), C3C4, "3*n - 6", jobs=1)} == {"equal"}


@pytest.mark.parametrize("n", range(4, 10))
def test_matching_join_is_feasible(n):
    assert matching_join(n).graph.m <= planar_turan(n, C3C4, jobs=1).max_edges
