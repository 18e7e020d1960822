"""Deterministic generators for the explicit plane graph families.

Vertex numbering conventions
----------------------------
``matching_join(n)``
    poles ``r = 0`` and ``r' = 1``; the i-th matching edge (i = 1..k) is
    ``u_i v_i`` with ``u_i = 2i``, ``v_i = 2i + 1``; for odd ``n`` the leftover
    vertex ``u* = n - 1`` is adjacent to both poles only.
``wheel_scaffold`` / ``gk_family``
    hub ``u = 0``, apex ``v = 1``, rim ``x_j = j + 1`` for ``j = 1..ell``.
    Patch interiors are numbered after the scaffold, in replacement order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath

from .embedding import EmbeddingError, Face, PlaneEmbedding, check_embedding, embedding_from_faces
from .graph import build_graph
from .patterns import circumference, cycles_of_length


class ParameterError(ValueError):
    """Construction parameters violate a precondition."""


class PatchError(ValueError):
    """A patch triangulation or boundary map is unusable.

    ``witness`` is a cycle demonstrating an eligibility violation, if any.
    """

    def __init__(self, message: str, witness: tuple[int, ...] | None = None) -> None:
        super().__init__(message if witness is None else f"{message}; witness cycle {list(witness)}")
        self.witness = witness


# ---------------------------------------------------------------------------
# matching join
# ---------------------------------------------------------------------------


def matching_join_edges(n: int) -> int:
    return (5 * n) // 2 - 4


def matching_join(n: int) -> PlaneEmbedding:
    """(⌊(n-2)/2⌋ K2) ∨ K2 in its kite-fan embedding.

    Kites ``r u_i v_i`` / ``r' u_i v_i`` are arranged around the poles, the
    pole edge ``rr'`` sits in the gap between the last and the first kite and
    the odd leftover vertex sits in the gap between kites 1 and 2 (or, for
    n = 5, next to the pole edge).
    """
    if n < 4:
        raise ParameterError(f"matching_join needs n >= 4, got {n}")
    r, rp = 0, 1
    k = (n - 2) // 2
    u = [None] + [2 * i for i in range(1, k + 1)]
    v = [None] + [2 * i + 1 for i in range(1, k + 1)]
    faces: list[list[int]] = []
    for i in range(1, k + 1):
        faces.append([r, u[i], v[i]])
        faces.append([rp, v[i], u[i]])
    gaps = [[r, v[i], rp, u[i + 1]] for i in range(1, k)]
    tail = [[r, v[k], rp], [r, rp, u[1]]]
    if n % 2 == 1:
        star = n - 1
        if gaps:
            q = gaps.pop(0)
            gaps[:0] = [[r, v[1], rp, star], [r, star, rp, u[2]]]
        else:
            tail = [[r, v[k], rp], [r, rp, star], [r, star, rp, u[1]]]
    faces += gaps + tail
    return embedding_from_faces(n, faces, outer=1)


# ---------------------------------------------------------------------------
# stellated triangulations
# ---------------------------------------------------------------------------


def stellated_order(t: int) -> int:
    return (3 ** (t + 1) + 5) // 2


def stellated_triangulation(t: int) -> PlaneEmbedding:
    """K4 with ``t`` rounds of stellating every internal face.

    The outer face ``(0, 1, 2)`` is never subdivided.
    """
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")
    outer = [0, 1, 2]
    inner = [[0, 1, 3], [1, 2, 3], [2, 0, 3]]
    n = 4
    for _ in range(t):
        nxt = []
        for a, b, c in inner:
            w = n
            n += 1
            nxt += [[a, b, w], [b, c, w], [c, a, w]]
        inner = nxt
    return embedding_from_faces(n, [outer] + inner, outer=0)


def moon_moser_t(k: int) -> int:
    """Stellation depth ⌊log3(2·(2k/7)^{log2 3} − 5)⌋ − 1 evaluated exactly.

    Raises ``ParameterError`` when the logarithm's argument is not positive
    or the depth would be negative ("k too small for this formula").
    """
    with mpmath.workdps(60):
        arg = 2 * mpmath.power(mpmath.mpf(2 * k) / 7, mpmath.log(3, 2)) - 5
        if arg <= 0:
            raise ParameterError(f"k={k} too small for this formula (log argument {mpmath.nstr(arg, 8)} <= 0)")
        j = int(mpmath.floor(mpmath.log(arg, 3)))
        # guard the floor against rounding: 3**j <= arg < 3**(j+1)
        while mpmath.mpf(3) ** j > arg:
            j -= 1
        while mpmath.mpf(3) ** (j + 1) <= arg:
            j += 1
    t = j - 1
    if t < 0:
        raise ParameterError(f"k={k} too small for this formula (t={t} < 0)")
    return t


# ---------------------------------------------------------------------------
# wheel scaffold
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    k: int
    ell: int
    allow_remainder: bool = False

    def __post_init__(self) -> None:
        if self.k < 4:
            raise ParameterError(f"k must be >= 4, got {self.k}")
        if self.ell < 2 * self.k:
            raise ParameterError(f"ell={self.ell} < 2k={2 * self.k}")
        if self.ell % (2 * self.k - 1) and not self.allow_remainder:
            raise ParameterError(f"2k-1={2 * self.k - 1} does not divide ell={self.ell}")

    @property
    def blocks(self) -> int:
        return self.ell // (2 * self.k - 1)

    def m(self, i: int) -> int:
        return (2 * self.k - 1) * (i - 1) + 1

    def n_(self, i: int) -> int:
        return self.m(i) + self.k


HUB = 0
APEX = 1


def rim(j: int, ell: int) -> int:
    """Vertex id of x_j (indices taken cyclically in 1..ell)."""
    return (j - 1) % ell + 2


def scaffold_faces(p: FamilyParams) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(T faces, S faces, remaining faces) of the wheel scaffold."""
    ell, L = p.ell, p.blocks
    x = lambda j: rim(j, ell)  # noqa: E731
    s_faces = [[x(j), x(j + 1), HUB] for j in range(1, ell + 1)]
    t_faces = [[APEX, x(p.m(i)), x(p.n_(i))] for i in range(1, L + 1)]
    other = []
    for i in range(1, L + 1):
        other.append([x(j) for j in range(p.m(i), p.n_(i) + 1)])
        nxt = p.m(i + 1) if i < L else ell + 1
        other.append([APEX] + [x(j) for j in range(p.n_(i), nxt + 1)])
    return t_faces, s_faces, other


def wheel_scaffold(p: FamilyParams | int, ell: int | None = None, allow_remainder: bool = False) -> PlaneEmbedding:
    """Hub ``u`` joined to the rim cycle, apex ``v`` outside with chords.

    Every T_i = v x_{m_i} x_{n_i} and S_j = x_j x_{j+1} u bounds a 3-face; the
    remaining faces have length k+1 except, with ``allow_remainder``, the
    last gap face.
    """
    if not isinstance(p, FamilyParams):
        p = FamilyParams(p, ell, allow_remainder)  # type: ignore[arg-type]
    t_faces, s_faces, other = scaffold_faces(p)
    faces = s_faces + t_faces + other
    return embedding_from_faces(p.ell + 2, faces, outer=len(faces) - 1)


# ---------------------------------------------------------------------------
# patches
# ---------------------------------------------------------------------------


def _rotations(seq: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(seq[i:]) + tuple(seq[:i]) for i in range(len(seq))]


@dataclass(frozen=True)
class PatchSpec:
    """Triangulation used to fill a 3-face.

    ``boundary`` is a face walk of the patch (in the rotation convention of
    ``PlaneEmbedding``); it becomes the host face's surroundings.
    """

    triangulation: PlaneEmbedding
    boundary: tuple[int, int, int]
    special_vertex: int | None = None
    name: str = "patch"

    def __post_init__(self) -> None:
        emb = self.triangulation
        if not emb.faces or any(not (f.is_cycle and f.length == 3) for f in emb.faces):
            raise PatchError(f"{self.name}: not a triangulation (all faces must be 3-faces)")
        if not any(tuple(self.boundary) in _rotations(f.vertices) for f in emb.faces):
            raise PatchError(f"{self.name}: boundary {self.boundary} is not a face walk of the patch")
        if self.special_vertex is not None and not 0 <= self.special_vertex < emb.graph.n:
            raise PatchError(f"{self.name}: special vertex out of range")

    @property
    def order(self) -> int:
        return self.triangulation.graph.n

    @property
    def size(self) -> int:
        return self.triangulation.graph.m

    @classmethod
    def build(cls, emb: PlaneEmbedding, special_vertex: int | None = None, name: str = "patch") -> PatchSpec:
        """Pick the first face through ``special_vertex`` (or face 0) as boundary."""
        face = emb.faces[0]
        if special_vertex is not None:
            face = next(f for f in emb.faces if special_vertex in f.vertices)
        return cls(emb, tuple(face.vertices), special_vertex, name)  # type: ignore[arg-type]


def triangle_patch() -> PatchSpec:
    emb = embedding_from_faces(3, [[0, 1, 2], [0, 2, 1]])
    return PatchSpec.build(emb, None, "triangle")


def k4_patch(special_vertex: int | None = 0) -> PatchSpec:
    emb = embedding_from_faces(4, [[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]])
    return PatchSpec.build(emb, special_vertex, "K4")


def stellated_patch(t: int) -> PatchSpec:
    return PatchSpec.build(stellated_triangulation(t), None, f"stellated({t})")


@dataclass(frozen=True)
class Eligibility:
    eligible: bool
    reason: str
    witness: tuple[int, ...] | None = None


def patch_eligibility(patch: PatchSpec, role: str, k: int, budget: int | None = None) -> Eligibility:
    """Check the short-cycle conditions for the T' or T'' role.

    T': every cycle has length <= k-1.  T'': every cycle has length <= k
    and, if k-cycles exist, all of them pass through the special vertex.
    """
    if role not in ("T'", "T''"):
        raise ValueError(f"role must be T' or T'', got {role!r}")
    g = patch.triangulation.graph
    res = circumference(g, budget)
    if not res.complete:
        return Eligibility(False, f"circumference undecided within budget (>= {res.length})", res.cycle)
    limit = k - 1 if role == "T'" else k
    if res.length > limit:
        return Eligibility(False, f"longest cycle {res.length} exceeds {limit}", res.cycle)
    if role == "T''" and res.length == k:
        kcycles = cycles_of_length(g, k)
        if patch.special_vertex is None:
            return Eligibility(False, f"has {k}-cycles but no special vertex", kcycles[0])
        for c in kcycles:
            if patch.special_vertex not in c:
                return Eligibility(False, f"a {k}-cycle avoids the special vertex", c)
    return Eligibility(True, "ok")


# ---------------------------------------------------------------------------
# face replacement
# ---------------------------------------------------------------------------


def aligned_boundary_map(host_walk: Sequence[int], patch: PatchSpec, anchor: tuple[int, int] | None = None) -> dict[int, int]:
    """Orientation-correct map of the patch boundary onto a host 3-face walk.

    The patch boundary walk must land on the host walk reversed.  ``anchor``
    fixes one pair ``(patch_vertex, host_vertex)``; by default the first
    boundary vertex goes to ``host_walk[0]``.
    """
    a, b, c = patch.boundary
    rev = [host_walk[0], host_walk[2], host_walk[1]]
    if anchor is None:
        anchor = (a, host_walk[0])
    pv, hv = anchor
    if pv not in patch.boundary or hv not in rev:
        raise PatchError(f"anchor {anchor} not on the boundaries")
    i = patch.boundary.index(pv)
    j = rev.index(hv)
    return {patch.boundary[(i + t) % 3]: rev[(j + t) % 3] for t in range(3)}


def replace_face(emb: PlaneEmbedding, face_id: int, patch: PatchSpec, boundary_map: dict[int, int]) -> PlaneEmbedding:
    """Glue ``patch`` into the 3-face ``face_id`` of ``emb``.

    Patch boundary vertices are identified with host vertices via
    ``boundary_map``; interior patch vertices get fresh ids ``emb.graph.n``,
    ``emb.graph.n + 1``, ... in patch order.  Mirror-image maps are rejected.
    """
    face: Face = emb.faces[face_id]
    if not (face.is_cycle and face.length == 3):
        raise PatchError(f"face {face_id} has length {face.length}, not a 3-face")
    walk = face.vertices
    if set(boundary_map) != set(patch.boundary) or set(boundary_map.values()) != set(walk):
        raise PatchError("boundary_map must be a bijection between the patch boundary and the face")
    image = tuple(boundary_map[x] for x in patch.boundary)
    if image not in _rotations((walk[0], walk[2], walk[1])):
        raise PatchError("boundary_map reverses orientation")
    n0 = emb.graph.n
    P = patch.triangulation
    ids = {}
    nxt = n0
    for x in range(P.graph.n):
        if x in boundary_map:
            ids[x] = boundary_map[x]
        else:
            ids[x] = nxt
            nxt += 1
    rotation = [list(r) for r in emb.rotation] + [[] for _ in range(nxt - n0)]
    bset = set(patch.boundary)
    for x in range(P.graph.n):
        prot = P.rotation[x]
        if x not in bset:
            rotation[ids[x]] = [ids[y] for y in prot]
            continue
        # boundary neighbours c -> b consecutive in the patch rotation at x
        d = len(prot)
        start = next(i for i in range(d) if prot[i] in bset and prot[(i + 1) % d] in bset and _is_boundary_angle(patch, x, prot[i]))
        c_, b_ = prot[start], prot[(start + 1) % d]
        interior = [ids[prot[(start + 2 + t) % d]] for t in range(d - 2)]
        host = rotation[ids[x]]
        hb, hc = ids[b_], ids[c_]
        ib = host.index(hb)
        if host[(ib + 1) % len(host)] != hc:
            raise PatchError("boundary_map reverses orientation")
        rotation[ids[x]] = host[: ib + 1] + interior + host[ib + 1 :]
    edges = set(emb.graph.edges())
    for a, b in P.graph.edges():
        edges.add((min(ids[a], ids[b]), max(ids[a], ids[b])))
    g = build_graph(nxt, edges)
    out = PlaneEmbedding(g, tuple(tuple(r) for r in rotation), 0)
    if emb.outer_face != face_id:
        d = emb.faces[emb.outer_face].darts[0]
    else:
        a, b = patch.boundary[0], patch.boundary[1]
        d = (ids[b], ids[a])
    out = out.with_outer_face(out.dart_face[d])
    check_embedding(out)
    return out


def _is_boundary_angle(patch: PatchSpec, x: int, c: int) -> bool:
    """True if the angle after ``c`` at ``x`` belongs to the boundary face."""
    a, b, cc = patch.boundary
    walk = [a, b, cc]
    i = walk.index(x)
    return walk[i - 1] == c


# ---------------------------------------------------------------------------
# the family of 2C_k-free graphs
# ---------------------------------------------------------------------------


def _find_face(emb: PlaneEmbedding, triple: Sequence[int]) -> int:
    a, b = triple[0], triple[1]
    for d in ((a, b), (b, a)):
        fid = emb.dart_face.get(d)
        if fid is not None:
            f = emb.faces[fid]
            if f.length == 3 and set(f.vertices) == set(triple):
                return fid
    raise EmbeddingError(f"no 3-face on {tuple(triple)}")


def family_order(k: int, ell: int, n1: int, n2: int) -> int:
    L = ell // (2 * k - 1)
    return L * (n1 - 3) + ell * (n2 - 2) + 2


def family_size(k: int, ell: int, n1: int, n2: int) -> int:
    L = ell // (2 * k - 1)
    return L * (3 * n1 - 6) + ell * (3 * n2 - 7)


def gk_family(
    k: int,
    ell: int,
    tprime: PatchSpec,
    tdoubleprime: PatchSpec,
    *,
    special_at_hub: bool = True,
    allow_remainder: bool = False,
    budget: int | None = None,
) -> PlaneEmbedding:
    """Scaffold with every T_i filled by T' and every S_j by T''.

    When T'' has a special vertex it is identified with the hub ``u``
    (vertex 0).  With ``special_at_hub=False`` the special vertex is placed
    elsewhere, which is only accepted if T'' has no k-cycles.
    """
    p = FamilyParams(k, ell, allow_remainder)
    e1 = patch_eligibility(tprime, "T'", k, budget)
    if not e1.eligible:
        raise PatchError(f"T' ineligible for k={k}: {e1.reason}", e1.witness)
    e2 = patch_eligibility(tdoubleprime, "T''", k, budget)
    if not e2.eligible:
        raise PatchError(f"T'' ineligible for k={k}: {e2.reason}", e2.witness)
    has_k = bool(cycles_of_length(tdoubleprime.triangulation.graph, k))
    sv = tdoubleprime.special_vertex
    if has_k and (not special_at_hub or sv is None or sv not in tdoubleprime.boundary):
        raise PatchError(f"T'' has {k}-cycles, so its special vertex must be identified with the hub u")
    emb = wheel_scaffold(p)
    t_faces, s_faces, _ = scaffold_faces(p)
    for tri in t_faces:
        fid = _find_face(emb, tri)
        walk = emb.faces[fid].vertices
        bmap = aligned_boundary_map(walk, tprime, (tprime.boundary[0], APEX))
        emb = replace_face(emb, fid, tprime, bmap)
    for tri in s_faces:
        fid = _find_face(emb, tri)
        walk = emb.faces[fid].vertices
        if sv is not None and sv in tdoubleprime.boundary:
            anchor_host = HUB if special_at_hub else tri[0]
            bmap = aligned_boundary_map(walk, tdoubleprime, (sv, anchor_host))
        else:
            bmap = aligned_boundary_map(walk, tdoubleprime, (tdoubleprime.boundary[0], tri[0]))
        emb = replace_face(emb, fid, tdoubleprime, bmap)
    return emb


def g0(ell: int) -> PlaneEmbedding:
    """The k = 4 member with T' a triangle and T'' = K4 (u* at the hub)."""
    if ell < 8 or ell % 7:
        raise ParameterError(f"g0 needs ell >= 8 with 7 | ell, got {ell}")
    return gk_family(4, ell, triangle_patch(), k4_patch(0))
