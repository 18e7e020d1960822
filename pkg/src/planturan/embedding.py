"""Plane embeddings as rotation systems, face walks and planarity testing.

Rotations list the neighbours of each vertex in clockwise order.  A dart is
an ordered pair ``(u, v)`` with ``uv`` an edge; the face walk sends the dart
``(u, v)`` to ``(v, w)`` where ``w`` is the clockwise successor of ``u`` in
the rotation at ``v``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .graph import Graph, build_graph


class EmbeddingError(ValueError):
    """A rotation system violates a plane-embedding invariant."""


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    @property
    def is_cycle(self) -> bool:
        """True when the boundary walk is a cycle (no repeated vertex)."""
        vs = self.vertices
        return len(vs) >= 3 and len(set(vs)) == len(vs)

    def edges(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v in self.darts}


@dataclass(frozen=True)
class PlaneEmbedding:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    outer_face: int = 0
    _pos: tuple[dict[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        g = self.graph
        if len(self.rotation) != g.n:
            raise EmbeddingError("rotation must have one entry per vertex")
        pos = []
        for v, rot in enumerate(self.rotation):
            if len(rot) != len(g.adj[v]) or set(rot) != set(g.adj[v]):
                raise EmbeddingError(f"rotation at {v} is not a permutation of its darts")
            pos.append({w: i for i, w in enumerate(rot)})
        object.__setattr__(self, "_pos", tuple(pos))
        nf = len(self.faces)
        if nf and not 0 <= self.outer_face < nf:
            raise EmbeddingError(f"outer face {self.outer_face} out of range 0..{nf - 1}")

    def next_dart(self, u: int, v: int) -> tuple[int, int]:
        rot = self.rotation[v]
        return v, rot[(self._pos[v][u] + 1) % len(rot)]

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(_walk_faces(self))

    @cached_property
    def dart_face(self) -> dict[tuple[int, int], int]:
        return {d: f.id for f in self.faces for d in f.darts}

    def face_vector(self) -> dict[int, int]:
        return face_vector(self)

    def euler_characteristic(self) -> int:
        return self.graph.n - self.graph.m + len(self.faces)

    def with_outer_face(self, face_id: int) -> PlaneEmbedding:
        return PlaneEmbedding(self.graph, self.rotation, face_id)

    def restrict(self, edges: Iterable[tuple[int, int]]) -> PlaneEmbedding:
        """Plane subgraph on the same vertex set induced by the given edges."""
        keep = {(min(u, v), max(u, v)) for u, v in edges}
        sub = build_graph(self.graph.n, keep)
        rot = tuple(
            tuple(w for w in self.rotation[v] if (min(v, w), max(v, w)) in keep)
            for v in range(self.graph.n)
        )
        return PlaneEmbedding(sub, rot, 0)

    def relabel(self, perm: Sequence[int]) -> PlaneEmbedding:
        """Rename vertex ``v`` to ``perm[v]``; keeps the same drawing."""
        g = self.graph.relabel(perm)
        rot: list[tuple[int, ...]] = [()] * g.n
        for v, r in enumerate(self.rotation):
            rot[perm[v]] = tuple(perm[w] for w in r)
        emb = PlaneEmbedding(g, tuple(rot), 0)
        if self.faces:
            d = self.faces[self.outer_face].darts[0]
            emb = emb.with_outer_face(emb.dart_face[(perm[d[0]], perm[d[1]])])
        return emb

    def mirror(self) -> PlaneEmbedding:
        return PlaneEmbedding(self.graph, tuple(tuple(reversed(r)) for r in self.rotation), 0)

    def to_json(self) -> dict:
        return {"n": self.graph.n, "rotation": [list(r) for r in self.rotation], "outer_face": self.outer_face}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict | str) -> PlaneEmbedding:
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])
        rotation = tuple(tuple(int(w) for w in r) for r in data["rotation"])
        g = build_graph(n, [(v, w) for v, r in enumerate(rotation) for w in r])
        return cls(g, rotation, int(data.get("outer_face", 0)))


def _walk_faces(emb: PlaneEmbedding) -> list[Face]:
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in range(emb.graph.n):
        for v in emb.rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            d = (u, v)
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = emb.next_dart(*d)
            if d != (u, v):
                raise EmbeddingError(f"face walk from {(u, v)} does not close")
            faces.append(Face(len(faces), tuple(walk)))
    if not faces and emb.graph.n:
        faces.append(Face(0, ()))  # an edgeless drawing leaves the whole plane as one face
    return faces


def faces(emb: PlaneEmbedding) -> list[Face]:
    return list(emb.faces)


def face_vector(emb: PlaneEmbedding) -> dict[int, int]:
    """Counts of ℓ-faces by length; faces whose walk repeats a vertex are skipped."""
    return dict(sorted(Counter(f.length for f in emb.faces if f.is_cycle).items()))


def check_embedding(emb: PlaneEmbedding) -> None:
    """Raise ``EmbeddingError`` unless the rotation system is a plane embedding.

    Checks the dart partition, the handshake identity over face lengths and,
    per connected component with at least one edge, Euler's formula.
    """
    g = emb.graph
    total = sum(f.length for f in emb.faces)
    if total != 2 * g.m:
        raise EmbeddingError(f"face lengths sum to {total}, expected {2 * g.m}")
    comp_of = {}
    for ci, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = ci
    nfaces: Counter[int] = Counter(comp_of[f.darts[0][0]] for f in emb.faces if f.darts)
    for ci, comp in enumerate(g.components()):
        ne = sum(len(g.adj[v]) for v in comp) // 2
        if ne == 0:
            continue
        chi = len(comp) - ne + nfaces[ci]
        if chi != 2:
            raise EmbeddingError(f"component {ci}: n - e + f = {chi}, rotation is not planar")


def embedding_from_faces(n: int, face_cycles: Sequence[Sequence[int]], outer: int = 0) -> PlaneEmbedding:
    """Build a rotation system from the face boundaries of a 2-connected plane graph.

    Face cycles may be given in either orientation; they are oriented
    consistently before the rotation is read off.  ``outer`` indexes
    ``face_cycles``.
    """
    cycles = [list(c) for c in face_cycles]
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for i, c in enumerate(cycles):
        for j in range(len(c)):
            a, b = c[j], c[(j + 1) % len(c)]
            edge_faces.setdefault((min(a, b), max(a, b)), []).append(i)
    for e, fl in edge_faces.items():
        if len(fl) != 2:
            raise EmbeddingError(f"edge {e} lies on {len(fl)} face slots, expected 2")
    orient = [0] * len(cycles)
    orient[0] = 1
    stack = [0]
    while stack:
        i = stack.pop()
        c = cycles[i] if orient[i] == 1 else cycles[i][::-1]
        for j in range(len(c)):
            a, b = c[j], c[(j + 1) % len(c)]
            for k in edge_faces[(min(a, b), max(a, b))]:
                if k == i:
                    continue
                ck = cycles[k]
                forward = any(ck[t] == b and ck[(t + 1) % len(ck)] == a for t in range(len(ck)))
                want = 1 if forward else -1
                if orient[k] == 0:
                    orient[k] = want
                    stack.append(k)
                elif orient[k] != want:
                    raise EmbeddingError("face cycles cannot be oriented consistently")
    if 0 in orient:
        raise EmbeddingError("face cycles do not form a connected surface")
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for i, c in enumerate(cycles):
        c = c if orient[i] == 1 else c[::-1]
        L = len(c)
        for j in range(L):
            u, v, w = c[j - 1], c[j], c[(j + 1) % L]
            if u in succ[v]:
                raise EmbeddingError(f"angle at {v} after {u} used twice")
            succ[v][u] = w
    rotation = []
    for v in range(n):
        s = succ[v]
        if not s:
            rotation.append(())
            continue
        start = min(s)
        order = [start]
        w = s[start]
        while w != start:
            order.append(w)
            w = s[w]
        if len(order) != len(s):
            raise EmbeddingError(f"rotation at {v} is not a single cycle")
        rotation.append(tuple(order))
    g = build_graph(n, [(min(a, b), max(a, b)) for a, b in edge_faces])
    emb = PlaneEmbedding(g, tuple(rotation), 0)
    oc = cycles[outer] if orient[outer] == 1 else cycles[outer][::-1]
    emb = emb.with_outer_face(emb.dart_face[(oc[0], oc[1])])
    check_embedding(emb)
    return emb


# ---------------------------------------------------------------------------
# planarity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiWitness:
    """Edges of a subdivision of K5 or K3,3 contained in a non-planar graph."""

    kind: str
    branch_vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "branch_vertices": list(self.branch_vertices), "edges": [list(e) for e in self.edges]}


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def _largest_face(emb: PlaneEmbedding) -> int:
    if not emb.faces:
        return 0
    return max(emb.faces, key=lambda f: (f.length, -f.id)).id


def test_planarity(g: Graph) -> PlaneEmbedding | KuratowskiWitness:
    """Planarity test with certificate in both directions.

    Returns a ``PlaneEmbedding`` (outer face = longest face) for planar
    input and a ``KuratowskiWitness`` otherwise.
    """
    ok, cert = nx.check_planarity(_to_nx(g), counterexample=True)
    if ok:
        data = cert.get_data()
        rotation = tuple(tuple(data.get(v, ())) for v in range(g.n))
        emb = PlaneEmbedding(g, rotation, 0)
        check_embedding(emb)
        return emb.with_outer_face(_largest_face(emb))
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in cert.edges()))
    deg = Counter(x for e in edges for x in e)
    branch = tuple(sorted(v for v, d in deg.items() if d >= 3))
    kind = "K5" if len(branch) == 5 and all(deg[v] == 4 for v in branch) else "K3,3"
    return KuratowskiWitness(kind, branch, edges)


# pytest would otherwise try to collect the public name above
test_planarity.__test__ = False  # type: ignore[attr-defined]


def is_planar(g: Graph) -> bool:
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    ok, _ = nx.check_planarity(_to_nx(g))
    return ok


def embed(g: Graph) -> PlaneEmbedding:
    res = test_planarity(g)
    if isinstance(res, KuratowskiWitness):
        raise EmbeddingError(f"graph is not planar ({res.kind} subdivision)")
    return res


def verify_kuratowski(g: Graph, w: KuratowskiWitness) -> bool:
    """Check that ``w`` is a subgraph of ``g`` homeomorphic to K5 or K3,3."""
    if not all(g.has_edge(u, v) for u, v in w.edges):
        return False
    h = nx.Graph(list(w.edges))
    # suppress degree-2 vertices
    for v in [v for v in h.nodes if h.degree(v) == 2]:
        a, b = list(h.neighbors(v))
        if h.has_edge(a, b):
            return False
        h.remove_node(v)
        h.add_edge(a, b)
    if w.kind == "K5":
        return nx.is_isomorphic(h, nx.complete_graph(5))
    return nx.is_isomorphic(h, nx.complete_bipartite_graph(3, 3))
