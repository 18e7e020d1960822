"""Exact canonical labelling by partition refinement and backtracking.

The canonical form is the lexicographically largest adjacency code over
all leaves of the individualisation-refinement tree.  Automorphisms
discovered at leaves prune the tree (orbit pruning at each node with the
generators that fix the node's prefix, plus back-jumping when a leaf
reproduces the first or best leaf).  Pruning never changes the maximum,
so the result is an exact isomorphism invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, encode_graph6


@dataclass(frozen=True)
class Labelling:
    code: int
    order: tuple[int, ...]
    """``order[i]`` is the vertex placed at canonical position ``i``."""
    generators: tuple[tuple[int, ...], ...]
    """Automorphisms found during the search (as vertex permutations)."""


def _refine(cells: list[list[int]], masks: tuple[int, ...] | list[int]) -> list[list[int]]:
    """Refine an ordered partition to the coarsest equitable refinement.

    Cells are split by the vector of neighbour counts into every current
    cell; new cells keep the parent position and are ordered by that
    vector, so the result depends only on invariant data.
    """
    while True:
        cell_masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            cell_masks.append(m)
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                mv = masks[v]
                sig = tuple((mv & cm).bit_count() for cm in cell_masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                changed = True
                for sig in sorted(groups):
                    out.append(groups[sig])
        cells = out
        if not changed:
            return cells


def _leaf_code(order: list[int], masks, n: int) -> int:
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    code = 0
    for v in order:
        row = 0
        m = masks[v]
        while m:
            low = m & -m
            row |= 1 << (n - 1 - pos[low.bit_length() - 1])
            m ^= low
        code = (code << n) | row
    return code


def _orbits(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, masks, n: int, initial: list[list[int]]) -> None:
        self.masks = masks
        self.n = n
        self.first_path: list[int] | None = None
        self.first_code = -1
        self.first_order: list[int] = []
        self.best_path: list[int] = []
        self.best_code = -1
        self.best_order: list[int] = []
        self.gens: list[tuple[int, ...]] = []
        self.initial = initial

    def _auto(self, src: list[int], dst: list[int]) -> None:
        perm = [0] * self.n
        for a, b in zip(src, dst):
            perm[a] = b
        t = tuple(perm)
        if t != tuple(range(self.n)) and t not in self.gens:
            self.gens.append(t)

    def run(self) -> None:
        self._visit(_refine(self.initial, self.masks), [])

    def _visit(self, cells: list[list[int]], path: list[int]) -> int | None:
        depth = len(path)
        if len(cells) == self.n:
            return self._leaf(cells, path)
        target_idx = min(
            (i for i, c in enumerate(cells) if len(c) > 1),
            key=lambda i: (len(cells[i]), i),
        )
        target = sorted(cells[target_idx])
        tried: list[int] = []
        for v in target:
            if tried:
                fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                if fixing:
                    orb = _orbits(self.n, fixing)
                    if any(orb[v] == orb[w] for w in tried):
                        continue
            tried.append(v)
            child = cells[:target_idx] + [[v], [w for w in cells[target_idx] if w != v]] + cells[target_idx + 1 :]
            jump = self._visit(_refine(child, self.masks), path + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    def _leaf(self, cells: list[list[int]], path: list[int]) -> int | None:
        order = [c[0] for c in cells]
        code = _leaf_code(order, self.masks, self.n)
        if self.first_path is None:
            self.first_path = list(path)
            self.first_code = code
            self.first_order = order
            self.best_path = list(path)
            self.best_code = code
            self.best_order = order
            return None
        if code == self.first_code:
            self._auto(self.first_order, order)
            return _common_prefix(path, self.first_path)
        if code == self.best_code:
            self._auto(self.best_order, order)
            return _common_prefix(path, self.best_path)
        if code > self.best_code:
            self.best_code = code
            self.best_path = list(path)
            self.best_order = order
        return None


def _common_prefix(a: list[int], b: list[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def canonical_labelling(g: Graph | tuple[int, ...], colours: list[int] | None = None) -> Labelling:
    """Canonical ordering of the vertices of ``g``.

    ``g`` may be a ``Graph`` or a tuple of neighbourhood bit masks.  An
    optional vertex colouring restricts to colour-preserving relabellings.
    """
    masks = g.masks if isinstance(g, Graph) else g
    n = len(masks)
    if n == 0:
        return Labelling(0, (), ())
    if colours is None:
        initial = [list(range(n))]
    else:
        initial = [[v for v in range(n) if colours[v] == c] for c in sorted(set(colours))]
    s = _Search(masks, n, initial)
    s.run()
    return Labelling(s.best_code, tuple(s.best_order), tuple(s.gens))


def canonical_masks(masks: tuple[int, ...] | list[int]) -> tuple[int, tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Fast path used by the search: (code, canonical masks, generators)."""
    lab = canonical_labelling(tuple(masks))
    n = len(masks)
    pos = [0] * n
    for i, v in enumerate(lab.order):
        pos[v] = i
    out = [0] * n
    for v in range(n):
        m = masks[v]
        row = 0
        while m:
            low = m & -m
            row |= 1 << pos[low.bit_length() - 1]
            m ^= low
        out[pos[v]] = row
    return (n, lab.code), tuple(out), lab.generators


def canonical_graph(g: Graph) -> Graph:
    lab = canonical_labelling(g)
    perm = [0] * g.n
    for i, v in enumerate(lab.order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic.

    It is the graph6 encoding of the canonically relabelled graph.
    """
    return encode_graph6(canonical_graph(g))


def automorphism_generators(g: Graph) -> tuple[tuple[int, ...], ...]:
    return canonical_labelling(g).generators
