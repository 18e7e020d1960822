"""Seeded random planar graphs.

A random triangulation is grown by inserting vertices into random faces,
mixed by random edge flips, and then thinned by keeping each edge
independently.  Subgraphs of planar graphs are planar, so every sample is
planar by construction.
"""

from __future__ import annotations

import random

from .graph import Graph, build_graph


def random_triangulation(n: int, rng: random.Random, flips: int | None = None) -> Graph:
    """Random triangulation on ``n >= 3`` vertices."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    tris: list[tuple[int, int, int]] = [(0, 1, 2), (0, 2, 1)]
    for w in range(3, n):
        a, b, c = tris.pop(rng.randrange(len(tris)))
        tris += [(a, b, w), (b, c, w), (c, a, w)]
    third = {}
    for a, b, c in tris:
        third[(a, b)] = c
        third[(b, c)] = a
        third[(c, a)] = b
    adj = [set() for _ in range(n)]
    for a, b in third:
        adj[a].add(b)
    for _ in range(3 * n if flips is None else flips):
        x, y = rng.choice(list(third))
        a, b = third[(x, y)], third[(y, x)]
        if a == b or b in adj[a]:
            continue
        for d in ((x, y), (y, a), (a, x), (y, x), (x, b), (b, y)):
            del third[d]
        for p, q, r in ((a, x, b), (b, y, a)):
            third[(p, q)] = r
            third[(q, r)] = p
            third[(r, p)] = q
        adj[x].discard(y)
        adj[y].discard(x)
        adj[a].add(b)
        adj[b].add(a)
    return build_graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def random_planar_graph(n: int, rng: random.Random, keep: float | None = None) -> Graph:
    """Random spanning subgraph of a random triangulation.

    Each edge survives with probability ``keep`` (drawn from [0.3, 1] when
    not given), and the vertex labels are shuffled.
    """
    g = random_triangulation(n, rng)
    p = rng.uniform(0.3, 1.0) if keep is None else keep
    perm = list(range(n))
    rng.shuffle(perm)
    return build_graph(n, [(perm[u], perm[v]) for u, v in g.edges() if rng.random() < p])
