"""Interior edges, Θ-graphs and their unions in a fixed plane embedding.

An edge is *interior* when both of its sides are triangular faces with
different third vertices; the union of those two triangles is its Θ-graph.
Unions of two Θ-graphs of independent interior edges are classified by
matching them, as plane graphs, against a fixed catalog of drawings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .embedding import Face, PlaneEmbedding, embedding_from_faces
from .graph import build_graph, encode_graph6
from .patterns import C3C4, find_disjoint_cycles

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class ThetaPreconditionError(ValueError):
    """An operation was called on edges that do not satisfy its precondition."""


class HypothesisNotMet(Exception):
    """The generating-graph closure is undefined for this embedding."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


# ---------------------------------------------------------------------------
# interior edges and Θ-graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InteriorEdgeSet:
    embedding: PlaneEmbedding = field(repr=False)
    edges: frozenset[Edge]

    def __contains__(self, e: object) -> bool:
        return isinstance(e, tuple) and len(e) == 2 and _edge(*e) in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.edges))


def _flanking_faces(emb: PlaneEmbedding, e: Edge) -> tuple[Face, Face]:
    u, v = e
    if not emb.graph.has_edge(u, v):
        raise ThetaPreconditionError(f"{e} is not an edge")
    return emb.faces[emb.dart_face[(u, v)]], emb.faces[emb.dart_face[(v, u)]]


def _is_interior(f1: Face, f2: Face, e: Edge) -> bool:
    if f1.id == f2.id or not (f1.length == 3 and f2.length == 3 and f1.is_cycle and f2.is_cycle):
        return False
    a1 = (set(f1.vertices) - set(e)).pop()
    a2 = (set(f2.vertices) - set(e)).pop()
    return a1 != a2


def interior_edges(emb: PlaneEmbedding) -> InteriorEdgeSet:
    out = set()
    for e in emb.graph.edges():
        f1, f2 = _flanking_faces(emb, e)
        if _is_interior(f1, f2, e):
            out.add(e)
    return InteriorEdgeSet(emb, frozenset(out))


@dataclass(frozen=True)
class ThetaGraph:
    base: Edge
    apexes: tuple[int, int]
    face_ids: tuple[int, int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.base + self.apexes)

    @property
    def edges(self) -> frozenset[Edge]:
        x, y = self.base
        return frozenset([_edge(x, y)] + [_edge(w, a) for a in self.apexes for w in (x, y)])


def theta_graph(emb: PlaneEmbedding, e: Edge) -> ThetaGraph:
    e = _edge(*e)
    f1, f2 = _flanking_faces(emb, e)
    if not _is_interior(f1, f2, e):
        raise ThetaPreconditionError(
            f"edge {e} is not interior: incident face lengths {f1.length} and {f2.length}"
            + (" (same face on both sides)" if f1.id == f2.id else "")
        )
    a1 = (set(f1.vertices) - set(e)).pop()
    a2 = (set(f2.vertices) - set(e)).pop()
    return ThetaGraph(e, (a1, a2), (f1.id, f2.id))


def _independent(e: Edge, f: Edge) -> bool:
    return not set(e) & set(f)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


class HClass(str, Enum):
    H0 = "H0"
    H1 = "H1"
    H2 = "H2"
    H3 = "H3"
    H4 = "H4"
    H5 = "H5"
    H01 = "H01"
    H02 = "H02"
    H03 = "H03"
    H04 = "H04"
    H05 = "H05"
    H13 = "H13"
    H31 = "H31"
    UNRECOGNIZED = "Unrecognized"

    @property
    def base_index(self) -> int | None:
        """Index 0..5 for the two-Θ shapes, None otherwise."""
        return BASE_CLASSES.index(self) if self in BASE_CLASSES else None


BASE_CLASSES = (HClass.H0, HClass.H1, HClass.H2, HClass.H3, HClass.H4, HClass.H5)

_H0_TRIANGLES = [["u1", "x", "y"], ["x", "y", "a"], ["y", "a", "b"], ["a", "b", "v1"]]
_H02_PART = _H0_TRIANGLES + [["y", "z", "v1"], ["y", "z", "c"], ["a", "x", "u1", "y", "c", "z", "v1"]]

# Each drawing is a list of face boundaries (orientation is fixed up when
# building the embedding).
CATALOG_FACES: dict[HClass, list[list[str]]] = {
    HClass.H0: _H0_TRIANGLES + [["a", "x", "u1", "y", "b", "v1"]],
    HClass.H1: [["x", "y", "v1"], ["x", "y", "b"], ["a", "b", "v1"], ["a", "b", "v2"], ["v1", "x", "b"], ["b", "y", "v1", "a", "v2"]],
    HClass.H2: [["x", "y", "v1"], ["x", "y", "v2"], ["a", "b", "v1"], ["a", "b", "v2"], ["a", "v2", "y", "v1"], ["b", "v2", "x", "v1"]],
    HClass.H3: [["x", "y", "a"], ["x", "y", "b"], ["a", "b", "v1"], ["a", "b", "v2"], ["a", "v2", "b", "x"], ["a", "v1", "b", "y"]],
    HClass.H4: [["x", "y", "a"], ["x", "y", "b"], ["a", "b", "v1"], ["a", "b", "x"], ["a", "v1", "b", "y"]],
    HClass.H5: [["x", "y", "b"], ["x", "y", "v1"], ["a", "b", "v1"], ["a", "b", "x"], ["a", "v1", "x"], ["y", "v1", "b"]],
    HClass.H01: _H0_TRIANGLES + [["y", "z", "b"], ["y", "z", "c"], ["x", "a", "v1", "b", "z", "c", "y", "u1"]],
    HClass.H02: _H02_PART + [["y", "b", "v1"]],
    HClass.H03: _H02_PART + [["y", "p", "b"], ["y", "p", "q"], ["y", "q", "p", "b", "v1"]],
    HClass.H04: _H02_PART + [["y", "p", "v1"], ["y", "p", "q"], ["y", "b", "v1", "p", "q"]],
    HClass.H05: _H02_PART
    + [["y", "p", "b"], ["y", "p", "q"], ["y", "w", "v1"], ["y", "w", "u"], ["y", "q", "p", "b", "v1", "w", "u"]],
    HClass.H13: [
        ["x", "y", "v1"], ["x", "y", "b"], ["a", "b", "v1"], ["a", "b", "v2"], ["b", "y", "v1", "a", "v2"],
        ["b", "z", "v1"], ["b", "z", "c"], ["b", "x", "v1", "z", "c"],
    ],
    HClass.H31: [
        ["x", "y", "a"], ["x", "y", "b"], ["a", "b", "v1"], ["a", "b", "v2"], ["a", "v2", "b", "x"],
        ["y", "z", "a"], ["y", "z", "b"], ["a", "z", "b", "v1"],
    ],
}


def _named_embedding(faces: list[list[str]]) -> tuple[PlaneEmbedding, tuple[str, ...]]:
    names: list[str] = []
    for f in faces:
        for x in f:
            if x not in names:
                names.append(x)
    idx = {x: i for i, x in enumerate(names)}
    return embedding_from_faces(len(names), [[idx[x] for x in f] for f in faces]), tuple(names)


@lru_cache(maxsize=None)
def catalog() -> dict[HClass, PlaneEmbedding]:
    return {cls: _named_embedding(faces)[0] for cls, faces in CATALOG_FACES.items()}


@lru_cache(maxsize=None)
def catalog_labels(cls: HClass) -> tuple[str, ...]:
    """Vertex names of a catalog drawing in embedding order."""
    return _named_embedding(CATALOG_FACES[cls])[1]


# ---------------------------------------------------------------------------
# plane matching
# ---------------------------------------------------------------------------


def _match_from(p: PlaneEmbedding, t: PlaneEmbedding, d0: Edge, d1: Edge) -> dict[int, int] | None:
    vmap = {d0[0]: d1[0]}
    used = {d1[0]}
    queue = [(d0[0], d0[1], d1[0], d1[1])]
    while queue:
        pv, pa, tv, ta = queue.pop()
        rp, rt = p.rotation[pv], t.rotation[tv]
        if len(rp) != len(rt):
            return None
        ip, it = rp.index(pa), rt.index(ta)
        for s in range(len(rp)):
            w, w2 = rp[(ip + s) % len(rp)], rt[(it + s) % len(rt)]
            if w in vmap:
                if vmap[w] != w2:
                    return None
                continue
            if w2 in used:
                return None
            vmap[w] = w2
            used.add(w2)
            queue.append((w, pv, w2, tv))
    return vmap


def plane_isomorphism(p: PlaneEmbedding, t: PlaneEmbedding, allow_mirror: bool = True) -> dict[int, int] | None:
    """Vertex map carrying the connected plane graph ``p`` onto ``t``.

    Maps preserve the rotation system (or reverse it everywhere when
    ``allow_mirror``); the outer face is ignored, i.e. drawings are
    compared on the sphere.  Isolated vertices are not supported.
    """
    gp, gt = p.graph, t.graph
    if gp.n != gt.n or gp.m != gt.m or sorted(map(len, gp.adj)) != sorted(map(len, gt.adj)):
        return None
    if gp.m == 0:
        return {v: v for v in range(gp.n)} if gp.n <= 1 else None
    if sorted(f.length for f in p.faces) != sorted(f.length for f in t.faces):
        return None
    d0 = next((u, v) for u in range(gp.n) for v in gp.adj[u])
    targets = [t] + ([t.mirror()] if allow_mirror else [])
    for tt in targets:
        for u in range(gt.n):
            if len(gt.adj[u]) != len(gp.adj[d0[0]]):
                continue
            for v in gt.adj[u]:
                vmap = _match_from(p, tt, d0, (u, v))
                if vmap is not None and len(vmap) == gp.n:
                    return vmap
    return None


def _compact(emb: PlaneEmbedding, edges: Iterable[Edge]) -> tuple[PlaneEmbedding, list[int]]:
    """Restrict to ``edges`` and renumber the touched vertices 0..k-1."""
    edges = [_edge(*e) for e in edges]
    verts = sorted({v for e in edges for v in e})
    sub = emb.restrict(edges)
    pos = {v: i for i, v in enumerate(verts)}
    rotation = tuple(tuple(pos[w] for w in sub.rotation[v]) for v in verts)
    g = build_graph(len(verts), [(pos[a], pos[b]) for a, b in edges])
    return PlaneEmbedding(g, rotation, 0), verts


def classify_subgraph(emb: PlaneEmbedding, edges: Iterable[Edge]) -> HClass:
    """Catalog class of the plane subgraph spanned by ``edges``."""
    sub, _ = _compact(emb, edges)
    if not sub.graph.is_connected():
        return HClass.UNRECOGNIZED
    for cls, drawing in catalog().items():
        if plane_isomorphism(sub, drawing) is not None:
            return cls
    return HClass.UNRECOGNIZED


def _check_pair(emb: PlaneEmbedding, e: Edge, f: Edge) -> tuple[ThetaGraph, ThetaGraph]:
    e, f = _edge(*e), _edge(*f)
    if not _independent(e, f):
        raise ThetaPreconditionError(f"edges {e} and {f} are not independent")
    return theta_graph(emb, e), theta_graph(emb, f)


def classify_pair(emb: PlaneEmbedding, e: Edge, f: Edge) -> HClass:
    """Class of Θ_e ∪ Θ_f by plane matching against the catalog."""
    te, tf = _check_pair(emb, e, f)
    cls = classify_subgraph(emb, te.edges | tf.edges)
    return cls if cls in BASE_CLASSES else HClass.UNRECOGNIZED


def classify_pair_by_cases(emb: PlaneEmbedding, e: Edge, f: Edge) -> HClass:
    """Class of Θ_e ∪ Θ_f from shared vertices and shared edges alone.

    This ignores the drawing and serves as an independent check of
    ``classify_pair``.
    """
    te, tf = _check_pair(emb, e, f)
    common = te.vertices & tf.vertices
    if len(common) == 2:
        w = _edge(*sorted(common))
        in_e, in_f = w in te.edges, w in tf.edges
        if in_e and in_f:
            return HClass.H0
        if in_e or in_f:
            # the shared pair are the apexes of one Θ and span an edge of the other
            other, apex_side = (tf, te) if in_f else (te, tf)
            if common != set(apex_side.apexes):
                return HClass.UNRECOGNIZED
            return HClass.H3 if w == other.base else HClass.H1
        if common == set(te.apexes) == set(tf.apexes):
            return HClass.H2
        return HClass.UNRECOGNIZED
    if len(common) == 3:
        # one base endpoint is an apex of the other Θ; look at the remaining apexes
        for a, b in ((te, tf), (tf, te)):
            if len(set(a.base) & b.vertices) == 1 and set(a.apexes) <= b.vertices:
                return HClass.H4 if set(a.apexes) == set(b.base) else HClass.H5
        return HClass.UNRECOGNIZED
    return HClass.UNRECOGNIZED


def pseudo_faces(emb: PlaneEmbedding, thetas: Iterable[ThetaGraph]) -> list[Face]:
    """Faces of the union of ``thetas`` that are not triangles of a member."""
    thetas = list(thetas)
    edges = set().union(*(t.edges for t in thetas)) if thetas else set()
    sub = emb.restrict(edges)
    own = {frozenset(emb.faces[i].darts) for t in thetas for i in t.face_ids}
    return [f for f in sub.faces if frozenset(f.darts) not in own]


# ---------------------------------------------------------------------------
# matching
# ---------------------------------------------------------------------------


def maximum_matching(edges: Iterable[Edge]) -> list[Edge]:
    """Exact maximum matching by memoised branching on each component."""
    edges = sorted({_edge(*e) for e in edges})
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    result: list[Edge] = []
    seen: set[int] = set()
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        result += _component_matching(sorted(comp), adj)
    return sorted(result)


def _component_matching(verts: list[int], adj: dict[int, set[int]]) -> list[Edge]:
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [sum(1 << idx[w] for w in adj[v]) for v in verts]

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, tuple[Edge, ...]]:
        while mask and not nbr[(mask & -mask).bit_length() - 1] & mask:
            mask &= mask - 1
        if not mask:
            return 0, ()
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        top = best(rest)
        cand = nbr[i] & rest
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            size, m = best(rest & ~low)
            if size + 1 > top[0]:
                top = (size + 1, m + ((verts[i], verts[j]),))
                if top[0] * 2 >= bin(mask).count("1") - 1:
                    break
            cand ^= low
        return top

    return [_edge(*e) for e in best((1 << len(verts)) - 1)[1]]


def interior_matching_number(emb: PlaneEmbedding) -> int:
    return len(maximum_matching(interior_edges(emb).edges))


# ---------------------------------------------------------------------------
# generating-graph closure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureResult:
    pair: tuple[Edge, Edge]
    ell_star: int
    h_star_class: HClass
    bases: tuple[Edge, ...]
    """Base edges of the Θ-graphs in the order they were added (pair first)."""
    h_max_vertices: frozenset[int]
    h_max_edges: frozenset[Edge]
    h_max_class: HClass
    hat_h_max_edges: frozenset[Edge]
    e_out: frozenset[Edge]
    reachable: tuple[tuple[HClass, int], ...] = ()
    """(class, edge count) of every maximal closure reachable by some order, if explored."""

    def to_json(self) -> dict:
        return {
            "pair": [list(e) for e in self.pair],
            "ell_star": self.ell_star,
            "h_star": self.h_star_class.value,
            "bases": [list(e) for e in self.bases],
            "h_max": self.h_max_class.value,
            "h_max_vertices": sorted(self.h_max_vertices),
            "h_max_edges": len(self.h_max_edges),
            "hat_h_max_edges": len(self.hat_h_max_edges),
            "e_out": [list(e) for e in sorted(self.e_out)],
            "reachable": [[c.value, m] for c, m in self.reachable],
        }


def _extend(emb: PlaneEmbedding, interior: Sequence[Edge], verts: set[int], edges: set[Edge], bases: list[Edge]) -> None:
    progress = True
    while progress:
        progress = False
        for e in interior:
            if len(set(e) & verts) == 1:
                t = theta_graph(emb, e)
                verts |= t.vertices
                edges |= t.edges
                bases.append(e)
                progress = True
                break


def _reachable(emb: PlaneEmbedding, interior: Sequence[Edge], verts: frozenset[int], edges: frozenset[Edge], limit: int) -> set[frozenset[Edge]]:
    """All maximal closures over every extension order (up to ``limit`` states)."""
    out: set[frozenset[Edge]] = set()
    seen: set[frozenset[Edge]] = set()
    stack = [(verts, edges)]
    while stack and len(seen) < limit:
        vs, es = stack.pop()
        if es in seen:
            continue
        seen.add(es)
        moves = [e for e in interior if len(set(e) & vs) == 1]
        if not moves:
            out.add(es)
        for e in moves:
            t = theta_graph(emb, e)
            stack.append((vs | t.vertices, es | t.edges))
    return out


def generating_closure(emb: PlaneEmbedding, explore_orders: bool = False, order_limit: int = 10_000) -> ClosureResult:
    """Seed with the independent interior pair of least class, then grow greedily.

    The seed pair minimises the class index; ties go to the least pair in
    sorted edge order.  Growth repeatedly adds the Θ-graph of the first
    interior edge (sorted order) having exactly one endpoint in the
    current graph.
    """
    interior = sorted(interior_edges(emb).edges)
    best: tuple[int, Edge, Edge] | None = None
    any_pair = False
    for e, f in combinations(interior, 2):
        if not _independent(e, f):
            continue
        any_pair = True
        cls = classify_pair(emb, e, f)
        if cls is HClass.UNRECOGNIZED:
            continue
        key = (cls.base_index, e, f)
        if best is None or key < best:
            best = key
    if not any_pair:
        raise HypothesisNotMet("no two independent interior edges")
    if best is None:
        raise HypothesisNotMet("no independent interior pair forms a catalog shape H0-H5")
    ell, e, f = best
    te, tf = theta_graph(emb, e), theta_graph(emb, f)
    verts = set(te.vertices | tf.vertices)
    edges = set(te.edges | tf.edges)
    bases = [e, f]
    start_v, start_e = frozenset(verts), frozenset(edges)
    _extend(emb, interior, verts, edges, bases)
    reach: tuple[tuple[HClass, int], ...] = ()
    if explore_orders:
        finals = _reachable(emb, interior, start_v, start_e, order_limit)
        reach = tuple(sorted({(classify_subgraph(emb, es), len(es)) for es in finals}, key=lambda t: (t[0].value, t[1])))
    hat = frozenset(emb.graph.induced(verts))
    e_out = frozenset(x for x in interior if not set(x) & verts)
    return ClosureResult(
        pair=(e, f),
        ell_star=ell,
        h_star_class=BASE_CLASSES[ell],
        bases=tuple(bases),
        h_max_vertices=frozenset(verts),
        h_max_edges=frozenset(edges),
        h_max_class=classify_subgraph(emb, edges),
        hat_h_max_edges=hat,
        e_out=e_out,
        reachable=reach,
    )


# ---------------------------------------------------------------------------
# lemma audit
# ---------------------------------------------------------------------------

LEMMAS = ("face-count", "theta-intersection", "pair-class", "hmax-catalog", "eout-matching")

MATCHING_CLASSES = frozenset({HClass.H0, HClass.H1, HClass.H2, HClass.H3, HClass.H4, HClass.H13})
EMPTY_CLASSES = frozenset({HClass.H01, HClass.H02, HClass.H03, HClass.H04, HClass.H05, HClass.H5, HClass.H31})


class CorpusError(ValueError):
    """A corpus member violates the audit precondition."""

    def __init__(self, graph6: str, witness: tuple[tuple[int, ...], ...]) -> None:
        super().__init__(f"{graph6} contains C3+C4: {[list(c) for c in witness]}")
        self.graph6 = graph6
        self.witness = witness


@dataclass(frozen=True)
class LemmaResult:
    graph: str
    lemma: str
    status: str
    witness: object = None

    def to_json(self) -> dict:
        d = {"graph": self.graph, "lemma": self.lemma, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class LemmaReport:
    results: list[LemmaResult] = field(default_factory=list)

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.results:
            row = out.setdefault(r.lemma, {"pass": 0, "fail": 0, "not-applicable": 0})
            row[r.status] += 1
        return out

    @property
    def failures(self) -> list[LemmaResult]:
        return [r for r in self.results if r.status == "fail"]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in self.results)


def _is_matching(edges: Iterable[Edge]) -> Edge | None:
    seen: dict[int, Edge] = {}
    for e in sorted(edges):
        for v in e:
            if v in seen:
                return e
            seen[v] = e
    return None


def audit_embedding(emb: PlaneEmbedding, lemmas: Sequence[str] = LEMMAS) -> list[LemmaResult]:
    """Audit one C3∪C4-free embedding; raises ``CorpusError`` otherwise."""
    unknown = set(lemmas) - set(LEMMAS)
    if unknown:
        raise ValueError(f"unknown lemma ids {sorted(unknown)}")
    g6 = encode_graph6(emb.graph).decode()
    w = find_disjoint_cycles(emb.graph, C3C4)
    if w is not None:
        raise CorpusError(g6, w.cycles)
    interior = sorted(interior_edges(emb).edges)
    pairs = [(e, f) for e, f in combinations(interior, 2) if _independent(e, f)]
    out = []

    def res(lemma: str, status: str, witness: object = None) -> None:
        out.append(LemmaResult(g6, lemma, status, witness))

    closure: ClosureResult | None = None
    closure_reason = ""
    if {"hmax-catalog", "eout-matching"} & set(lemmas):
        try:
            closure = generating_closure(emb)
        except HypothesisNotMet as exc:
            closure_reason = exc.reason
    for lemma in lemmas:
        if lemma == "face-count":
            alpha = len(maximum_matching(interior))
            if alpha > 1:
                res(lemma, "not-applicable", {"alpha": alpha})
                continue
            fv = emb.face_vector()
            ok = len(interior) <= 9 or fv.get(3, 0) + fv.get(4, 0) <= emb.graph.n - 1
            res(lemma, "pass" if ok else "fail", None if ok else {"interior": len(interior), "faces": fv})
        elif lemma == "theta-intersection":
            if not pairs:
                res(lemma, "not-applicable")
                continue
            bad = next(
                ((e, f) for e, f in pairs if len(theta_graph(emb, e).vertices & theta_graph(emb, f).vertices) < 2),
                None,
            )
            res(lemma, "fail" if bad else "pass", [list(bad[0]), list(bad[1])] if bad else None)
        elif lemma == "pair-class":
            if not pairs:
                res(lemma, "not-applicable")
                continue
            bad = next(((e, f) for e, f in pairs if classify_pair(emb, e, f) is HClass.UNRECOGNIZED), None)
            res(lemma, "fail" if bad else "pass", [list(bad[0]), list(bad[1])] if bad else None)
        elif lemma == "hmax-catalog":
            if closure is None:
                res(lemma, "not-applicable", {"reason": closure_reason})
                continue
            ok = closure.h_max_class is not HClass.UNRECOGNIZED
            res(lemma, "pass" if ok else "fail", {"h_max": closure.h_max_class.value, "bases": [list(b) for b in closure.bases]})
        elif lemma == "eout-matching":
            if closure is None or closure.h_max_class is HClass.UNRECOGNIZED:
                res(lemma, "not-applicable", {"reason": closure_reason or "H_max unrecognized"})
                continue
            if closure.h_max_class in MATCHING_CLASSES:
                clash = _is_matching(closure.e_out)
                res(lemma, "fail" if clash else "pass", {"h_max": closure.h_max_class.value, "e_out": len(closure.e_out)})
            else:
                ok = not closure.e_out
                res(lemma, "pass" if ok else "fail", {"h_max": closure.h_max_class.value, "e_out": len(closure.e_out)})
    return out


def lemma_audit(corpus: Iterable[PlaneEmbedding], lemmas: Sequence[str] = LEMMAS) -> LemmaReport:
    report = LemmaReport()
    for emb in corpus:
        report.results += audit_embedding(emb, lemmas)
    return report
