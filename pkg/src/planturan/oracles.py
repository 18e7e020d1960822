"""Slow reference implementations used to cross-check the fast paths.

Nothing here shares code with the optimized routines beyond the ``Graph``
container: cycles are found by trying vertex subsets and orderings,
isomorphism classes are separated with networkx, and planarity comes from
networkx directly.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Sequence

import networkx as nx

from .graph import Graph, build_graph


def _spans_cycle(g: Graph, vs: Sequence[int]) -> bool:
    first, rest = vs[0], vs[1:]
    for perm in permutations(rest):
        if perm and perm[0] > perm[-1]:
            continue  # each cycle once per direction
        order = (first,) + perm
        if all(g.has_edge(order[i], order[(i + 1) % len(order)]) for i in range(len(order))):
            return True
    return False


def cycle_vertex_sets(g: Graph, k: int) -> list[frozenset[int]]:
    """Vertex sets of size ``k`` carrying at least one k-cycle."""
    return [frozenset(s) for s in combinations(range(g.n), k) if _spans_cycle(g, s)]


def naive_cycles(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Every k-cycle as a vertex sequence (smallest vertex first, one direction)."""
    out = []
    for s in combinations(range(g.n), k):
        first, rest = s[0], s[1:]
        for perm in permutations(rest):
            if perm[0] > perm[-1]:
                continue
            order = (first,) + perm
            if all(g.has_edge(order[i], order[(i + 1) % k]) for i in range(k)):
                out.append(order)
    return sorted(out)


def naive_has_pattern(g: Graph, lengths: Sequence[int]) -> bool:
    """True if ``g`` has vertex-disjoint cycles of the given lengths."""
    lengths = sorted(lengths)
    if sum(lengths) > g.n:
        return False
    sets = {k: cycle_vertex_sets(g, k) for k in set(lengths)}

    def place(i: int, used: frozenset[int]) -> bool:
        if i == len(lengths):
            return True
        return any(not (s & used) and place(i + 1, used | s) for s in sets[lengths[i]])

    return place(0, frozenset())


def naive_circumference(g: Graph) -> int:
    """Length of a longest cycle (0 for forests), by trying every vertex set."""
    for k in range(g.n, 2, -1):
        for s in combinations(range(g.n), k):
            if _spans_cycle(g, s):
                return k
    return 0


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


class IsoClasses:
    """Isomorphism-class bookkeeping with WL-hash buckets and VF2 checks."""

    def __init__(self) -> None:
        self.buckets: dict[tuple, list[nx.Graph]] = {}
        self.graphs: list[Graph] = []

    def add(self, g: Graph) -> bool:
        h = _nx(g)
        key = (g.m, tuple(sorted(d for _, d in h.degree())), nx.weisfeiler_lehman_graph_hash(h, iterations=3))
        bucket = self.buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, other) for other in bucket):
            return False
        bucket.append(h)
        self.graphs.append(g)
        return True

    def __len__(self) -> int:
        return len(self.graphs)


def naive_planar_classes(n: int, max_edges: int | None = None) -> list[list[Graph]]:
    """All planar graphs on ``n`` vertices grouped by edge count (bottom-up)."""
    return naive_free_levels(n, None, max_edges)


def naive_free_levels(n: int, lengths: Sequence[int] | None, max_edges: int | None = None) -> list[list[Graph]]:
    """Planar (and, if ``lengths`` is given, pattern-free) graphs by edge count.

    Both properties survive edge deletion, so every such graph with m + 1
    edges is an augmentation of one with m edges.  Level m holds one graph
    per isomorphism class.
    """
    levels = [[build_graph(n, [])]]
    pairs = list(combinations(range(n), 2))
    while levels[-1] and (max_edges is None or len(levels) <= max_edges):
        classes = IsoClasses()
        for g in levels[-1]:
            for u, v in pairs:
                if g.has_edge(u, v):
                    continue
                h = g.add_edge(u, v)
                if not nx.check_planarity(_nx(h))[0]:
                    continue
                if lengths is not None and naive_has_pattern(h, lengths):
                    continue
                classes.add(h)
        if not len(classes):
            break
        levels.append(classes.graphs)
    return levels


def naive_planar_turan(n: int, lengths: Sequence[int]) -> tuple[int, list[Graph]]:
    """(maximum edges, one graph per extremal class) by bottom-up growth."""
    levels = naive_free_levels(n, lengths)
    return len(levels) - 1, levels[-1]
