"""Simple undirected graphs and the graph6 exchange format."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    """Raised for malformed vertex/edge input."""


class Graph6Error(ValueError):
    """Raised when a graph6 string cannot be parsed.

    ``offset`` is the byte position of the first offending byte.
    """

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1`` with sorted adjacency lists.

    Instances are immutable; ``masks[v]`` is the neighbourhood of ``v`` as a
    bit set and is what the hot loops elsewhere in the package operate on.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        masks = []
        for v, row in enumerate(self.adj):
            m = 0
            for w in row:
                m |= 1 << w
            masks.append(m)
        for v, row in enumerate(self.adj):
            for w in row:
                if w == v or not (masks[w] >> v) & 1:
                    raise GraphError(f"adjacency not simple/symmetric at ({v}, {w})")
        object.__setattr__(self, "masks", tuple(masks))

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> Graph:
        masks = list(masks)
        adj = tuple(tuple(w for w in range(len(masks)) if (m >> w) & 1) for m in masks)
        return cls(len(masks), adj)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.masks[u] >> v) & 1)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self.masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling is not a permutation")
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def subgraph_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        """Spanning subgraph on the same vertex set with the given edges."""
        return build_graph(self.n, edges)

    def remove_edge(self, u: int, v: int) -> Graph:
        masks = list(self.masks)
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
        return Graph.from_masks(masks)

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise GraphError(f"loop at {u}")
        masks = list(self.masks)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
        return Graph.from_masks(masks)

    def induced(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        """Edges of the subgraph induced by ``vertices`` (original labels)."""
        vs = set(vertices)
        return [(u, v) for u, v in self.edges() if u in vs and v in vs]


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph, collapsing duplicate edges.

    Raises ``GraphError`` naming the offending pair for loops or
    out-of-range endpoints.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    masks = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {pair!r} out of range for n={n}")
        if u == v:
            raise GraphError(f"loop {pair!r}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph.from_masks(masks)


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

_G6_HEADER = b">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphError(f"n={n} too large for graph6")


def encode_graph6(g: Graph) -> bytes:
    """Standard graph6 encoding (no header, no trailing newline)."""
    out = bytearray(_encode_n(g.n))
    acc = 0
    nbits = 0
    masks = g.masks
    for j in range(1, g.n):
        mj = masks[j]
        for i in range(j):
            acc = (acc << 1) | ((mj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.rstrip(b"\r\n")
    pos = 0
    if data.startswith(_G6_HEADER):
        pos = len(_G6_HEADER)
    if pos >= len(data):
        raise Graph6Error("empty graph6 string", pos)
    for i in range(pos, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"invalid graph6 byte {data[i]!r}", i)
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    else:
        if pos + 1 < len(data) and data[pos + 1] == 126:
            width, pos = 6, pos + 2
        else:
            width, pos = 3, pos + 1
        if pos + width > len(data):
            raise Graph6Error("truncated vertex count", len(data))
        n = 0
        for k in range(width):
            n = (n << 6) | (data[pos + k] - 63)
        pos += width
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} adjacency bytes for n={n}, found {len(body)}",
            pos + min(len(body), nbytes),
        )
    masks = [0] * n
    bit = 0
    j, i = 1, 0
    for k, byte in enumerate(body):
        val = byte - 63
        for s in range(5, -1, -1):
            if bit >= nbits:
                if (val >> s) & 1:
                    raise Graph6Error("nonzero padding bits", pos + k)
                continue
            if (val >> s) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                j += 1
                i = 0
    return Graph.from_masks(masks)


def read_graph6_lines(data: bytes) -> list[Graph]:
    """Parse a graph6 file (one graph per line).

    Offsets in raised errors are relative to the start of ``data``.
    """
    graphs = []
    offset = 0
    for line in data.splitlines(keepends=True):
        stripped = line.rstrip(b"\r\n")
        if stripped:
            try:
                graphs.append(decode_graph6(stripped))
            except Graph6Error as exc:
                raise Graph6Error(str(exc).rsplit(" (byte offset", 1)[0], offset + exc.offset) from None
        offset += len(line)
    if not graphs:
        raise Graph6Error("no graphs in input", 0)
    return graphs
