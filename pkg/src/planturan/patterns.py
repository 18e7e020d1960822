"""Detection of cycles and vertex-disjoint cycle unions.

All searches run on neighbourhood bit masks; ``avail`` arguments restrict
the search to a vertex subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Graph


@dataclass(frozen=True)
class CyclePattern:
    """Vertex-disjoint union of cycles with the given lengths."""

    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.lengths:
            raise ValueError("pattern needs at least one cycle")
        if any(k < 3 for k in self.lengths):
            raise ValueError(f"cycle lengths must be >= 3, got {self.lengths}")
        object.__setattr__(self, "lengths", tuple(sorted(self.lengths)))

    @classmethod
    def parse(cls, text: str) -> CyclePattern:
        """Parse the command-line form ``"3,4"``."""
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError as exc:
            raise ValueError(f"bad pattern {text!r}: {exc}") from None

    @property
    def order(self) -> int:
        return sum(self.lengths)

    def __str__(self) -> str:
        return ",".join(map(str, self.lengths))


C3C4 = CyclePattern((3, 4))
TWO_C4 = CyclePattern((4, 4))


@dataclass(frozen=True)
class PatternWitness:
    cycles: tuple[tuple[int, ...], ...]

    def validate(self, g: Graph, pattern: CyclePattern) -> bool:
        if sorted(len(c) for c in self.cycles) != list(pattern.lengths):
            return False
        used: set[int] = set()
        for c in self.cycles:
            if len(set(c)) != len(c) or used & set(c):
                return False
            used |= set(c)
            if not all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))):
                return False
        return True

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.cycles]


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _iter_cycles(masks: Sequence[int], avail: int, k: int) -> Iterator[tuple[int, ...]]:
    """Each k-cycle inside ``avail`` once, as its canonical vertex sequence.

    Canonical: starts at its minimum vertex and the second vertex is smaller
    than the last.
    """
    for s in _bits(avail):
        higher = avail & ~((1 << (s + 1)) - 1)
        ns = masks[s] & higher
        if (ns.bit_count() < 2) or (higher | (1 << s)).bit_count() < k:
            continue
        if k == 3:
            for a in _bits(ns):
                for b in _bits(masks[a] & ns & ~((1 << (a + 1)) - 1)):
                    yield (s, a, b)
            continue
        path = [s]
        # iterative DFS over simple paths s -> ... staying in `higher`
        stack = [(s, _bits(ns), higher & ~(1 << s))]
        while stack:
            v, it, free = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                path.pop()
                continue
            if len(path) == k - 1:
                if (masks[w] >> s) & 1 and path[1] < w:
                    yield (*path, w)
                continue
            path.append(w)
            nfree = free & ~(1 << w)
            stack.append((w, _bits(masks[w] & nfree), nfree))


def _degree_order(masks: Sequence[int]) -> list[int]:
    return sorted(range(len(masks)), key=lambda v: (-masks[v].bit_count(), v))


def _has_cycle(masks: Sequence[int], avail: int, k: int, order: Sequence[int] | None = None) -> tuple[int, ...] | None:
    if avail.bit_count() < k:
        return None
    if k == 4:
        # Each 4-cycle is seen from its top vertex a (degree order) through
        # two wedges a-b-c with b, c ranked below a; near-linear work on
        # sparse input.  `order` may be precomputed for the whole graph.
        if order is None:
            order = _degree_order(masks)
        below = avail
        for a in order:
            if not (avail >> a) & 1:
                continue
            below &= ~(1 << a)
            hit = 0
            for b in _bits(masks[a] & below):
                cs = masks[b] & below
                dup = hit & cs
                if dup:
                    c = (dup & -dup).bit_length() - 1
                    d = next(x for x in _bits(masks[a] & below & masks[c]) if x != b)
                    return (a, b, c, d)
                hit |= cs
        return None
    return next(_iter_cycles(masks, avail, k), None)


def _find(
    masks: Sequence[int], avail: int, lengths: tuple[int, ...], order: Sequence[int] | None = None
) -> list[tuple[int, ...]] | None:
    if avail.bit_count() < sum(lengths):
        return None
    if order is None:
        order = _degree_order(masks)
    if len(lengths) == 1:
        c = _has_cycle(masks, avail, lengths[0], order)
        return None if c is None else [c]
    seen: set[int] = set()
    for cyc in _iter_cycles(masks, avail, lengths[0]):
        cm = 0
        for v in cyc:
            cm |= 1 << v
        if cm in seen:
            continue
        seen.add(cm)
        rest = _find(masks, avail & ~cm, lengths[1:], order)
        if rest is not None:
            return [cyc, *rest]
    return None


def find_disjoint_cycles(g: Graph, pattern: CyclePattern) -> PatternWitness | None:
    """Vertex-disjoint cycles of the pattern's lengths, or ``None``.

    Shortest length first, recursing on the graph left after removing each
    candidate cycle's vertices.
    """
    found = _find(g.masks, (1 << g.n) - 1, pattern.lengths)
    return None if found is None else PatternWitness(tuple(found))


def is_pattern_free(g: Graph, pattern: CyclePattern) -> bool:
    return _find(g.masks, (1 << g.n) - 1, pattern.lengths) is None


def masks_pattern_free(masks: Sequence[int], lengths: tuple[int, ...]) -> bool:
    return _find(masks, (1 << len(masks)) - 1, lengths) is None


def cycles_of_length(g: Graph, k: int, avoid: Sequence[int] = ()) -> list[tuple[int, ...]]:
    """All k-cycles, each once, as lexicographically least rotation/reflection."""
    if k < 3:
        raise ValueError("cycle length must be >= 3")
    avail = (1 << g.n) - 1
    for v in avoid:
        avail &= ~(1 << v)
    return list(_iter_cycles(g.masks, avail, k))


# ---------------------------------------------------------------------------
# circumference
# ---------------------------------------------------------------------------


class BudgetExceeded(RuntimeError):
    """The longest-cycle search ran out of nodes before proving optimality."""

    def __init__(self, nodes: int, lower_bound: int, cycle: tuple[int, ...]) -> None:
        super().__init__(f"node budget exhausted after {nodes} nodes; best cycle so far has length {lower_bound}")
        self.nodes = nodes
        self.lower_bound = lower_bound
        self.cycle = cycle


@dataclass(frozen=True)
class CircumferenceResult:
    length: int
    cycle: tuple[int, ...]
    nodes: int
    complete: bool


def _reach(masks: Sequence[int], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _peel(masks: Sequence[int], region: int, ends: int) -> int:
    """Drop vertices of ``region`` with < 2 neighbours in region+ends, repeatedly."""
    changed = True
    while changed:
        changed = False
        full = region | ends
        for v in _bits(region):
            if (masks[v] & full).bit_count() < 2:
                region &= ~(1 << v)
                full &= ~(1 << v)
                changed = True
    return region


def _blocks(masks: Sequence[int], vertices: int) -> list[int]:
    """Vertex sets (as masks) of the biconnected components of G[vertices]."""
    order: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[int] = []
    for root in _bits(vertices):
        if root in order:
            continue
        order[root] = low[root] = len(order)
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, _bits(masks[root] & vertices))]
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= order[u]:
                        m = 0
                        while True:
                            a, b = edge_stack.pop()
                            m |= (1 << a) | (1 << b)
                            if (a, b) == (u, v):
                                break
                        blocks.append(m)
                continue
            if w == parent:
                continue
            if w not in order:
                order[w] = low[w] = len(order)
                edge_stack.append((v, w))
                stack.append((w, v, _bits(masks[w] & vertices)))
            elif order[w] < order[v]:
                low[v] = min(low[v], order[w])
                edge_stack.append((v, w))
    return blocks


def circumference(g: Graph, budget: int | None = None) -> CircumferenceResult:
    """Exact length of a longest cycle by branch-and-bound over paths.

    Blocks are searched separately, largest first.  Within a block, every
    cycle is generated from its minimum vertex ``s`` (in a degree-descending
    order); a partial path is pruned when the vertices that could still
    close it back to ``s`` (reachable from the path end, after peeling
    vertices of degree < 2) cannot beat the incumbent.  ``budget`` bounds
    the number of search nodes; when it runs out the result is marked
    incomplete.
    """
    masks = g.masks
    best_len = 0
    best_cyc: tuple[int, ...] = ()
    nodes = 0
    complete = True
    blocks = sorted(_blocks(masks, (1 << g.n) - 1), key=lambda b: -b.bit_count())
    for block in blocks:
        size = block.bit_count()
        if size < 3 or size <= best_len:
            continue
        bm = [masks[v] & block for v in range(g.n)]
        order = sorted(_bits(block), key=lambda v: (-bm[v].bit_count(), v))
        remaining = block
        for s in order:
            if remaining.bit_count() <= best_len:
                break
            # cycles whose first vertex in `order` is s
            region = remaining & ~(1 << s)
            path = [s]
            stack = [(s, iter(sorted(_bits(bm[s] & region))), region)]
            while stack:
                v, it, free = stack[-1]
                w = next(it, None)
                if w is None:
                    stack.pop()
                    path.pop()
                    continue
                nodes += 1
                if budget is not None and nodes > budget:
                    complete = False
                    stack.clear()
                    break
                nfree = free & ~(1 << w)
                if (bm[w] >> s) & 1 and len(path) >= 2 and len(path) + 1 > best_len:
                    best_len = len(path) + 1
                    best_cyc = (*path, w)
                    if best_len == remaining.bit_count():
                        stack.clear()
                        break
                # bound: vertices able to lie on a w -> s return path
                cand = _peel(bm, _reach(bm, w, nfree) & nfree & ~(1 << w), (1 << w) | (1 << s))
                if not (cand & bm[s]) or len(path) + 1 + cand.bit_count() <= best_len:
                    continue
                if len(path) + 1 + cand.bit_count() > best_len + 1:
                    cand = _on_path(bm, cand, w, s)
                    if len(path) + 1 + cand.bit_count() <= best_len:
                        continue
                path.append(w)
                nxt = sorted(_bits(bm[w] & nfree), key=lambda x: (bm[x] & nfree).bit_count())
                stack.append((w, iter(nxt), nfree))
            if not complete:
                break
            remaining &= ~(1 << s)
        if not complete:
            break
    return CircumferenceResult(best_len, best_cyc, nodes, complete)


def _on_path(bm: Sequence[int], cand: int, w: int, s: int) -> int:
    """Vertices of ``cand`` lying on some simple w–s path through ``cand``.

    Equivalently the block containing the virtual edge ws in the graph on
    cand+{w, s} with ws added.
    """
    vertices = cand | (1 << w) | (1 << s)
    local = list(bm)
    local[w] = (local[w] & vertices) | (1 << s)
    local[s] = (local[s] & vertices) | (1 << w)
    for b in _blocks(local, vertices):
        if (b >> w) & 1 and (b >> s) & 1:
            return b & cand
    return 0


def longest_cycle(g: Graph, budget: int | None = None) -> int:
    """Circumference of ``g`` (0 for forests).

    Raises ``BudgetExceeded`` if ``budget`` search nodes do not suffice.
    """
    res = circumference(g, budget)
    if not res.complete:
        raise BudgetExceeded(res.nodes, res.length, res.cycle)
    return res.length


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


def vertex_connectivity_at_least(g: Graph, k: int) -> bool:
    """True iff ``g`` has more than ``k`` vertices and no cut of size < k.

    Brute force over candidate cuts.
    """
    from itertools import combinations

    if k <= 0:
        return True
    if k > g.n - 1:
        raise ValueError(f"k={k} exceeds n-1={g.n - 1}")
    full = (1 << g.n) - 1
    for size in range(k):
        for cut in combinations(range(g.n), size):
            cm = 0
            for v in cut:
                cm |= 1 << v
            rest = full & ~cm
            start = (rest & -rest).bit_length() - 1
            if _reach(g.masks, start, rest) != rest:
                return False
    return True
