from __future__ import annotations

import pytest

from planturan.constructions import (
    HUB,
    FamilyParams,
    ParameterError,
    PatchError,
    PatchSpec,
    aligned_boundary_map,
    family_order,
    family_size,
    g0,
    gk_family,
    k4_patch,
    matching_join,
    moon_moser_t,
    patch_eligibility,
    replace_face,
    stellated_patch,
    stellated_triangulation,
    triangle_patch,
    wheel_scaffold,
)
from planturan.embedding import check_embedding, embed, is_planar
from planturan.graph import complete_graph
from planturan.patterns import C3C4, CyclePattern, cycles_of_length, find_disjoint_cycles, longest_cycle, vertex_connectivity_at_least


def _structural(emb):
    check_embedding(emb)
    assert sum(f.length for f in emb.faces) == 2 * emb.graph.m
    if emb.graph.is_connected():
        assert emb.graph.n - emb.graph.m + len(emb.faces) == 2


# matching join ------------------------------------------------------------


@pytest.mark.parametrize("n,e", [(20, 46), (21, 48), (4, 6)])
def test_matching_join_sizes(n, e):
    emb = matching_join(n)
    assert emb.graph.m == e
    _structural(emb)


def test_matching_join_small_case_is_k4():
    assert sorted(matching_join(4).graph.edges()) == complete_graph(4).edges()


def test_matching_join_odd_leftover_neighbours():
    emb = matching_join(21)
    assert emb.graph.adj[20] == (0, 1)
    assert matching_join(5).graph.adj[4] == (0, 1)


@pytest.mark.parametrize("n", list(range(4, 41)) + [99, 200])
def test_matching_join_is_planar_and_free(n):
    emb = matching_join(n)
    assert is_planar(emb.graph)
    assert find_disjoint_cycles(emb.graph, C3C4) is None
    assert emb.graph.m == (5 * n) // 2 - 4
    _structural(emb)


def test_matching_join_rejects_small_n():
    with pytest.raises(ParameterError):
        matching_join(3)


# stellated triangulations ---------------------------------------------------


@pytest.mark.parametrize("t,n", [(0, 4), (1, 7), (2, 16), (3, 43)])
def test_stellated_order_and_faces(t, n):
    emb = stellated_triangulation(t)
    assert emb.graph.n == n == (3 ** (t + 1) + 5) // 2
    assert emb.face_vector() == {3: 2 * n - 4}
    assert emb.graph.m == 3 * n - 6
    _structural(emb)


@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_stellated_three_connected(t):
    assert vertex_connectivity_at_least(stellated_triangulation(t).graph, 3)


def test_moon_moser_t_values():
    assert moon_moser_t(20) == 1
    assert moon_moser_t(21) == 2
    with pytest.raises(ParameterError, match="too small"):
        moon_moser_t(4)
    with pytest.raises(ParameterError, match="too small"):
        moon_moser_t(8)


def test_moon_moser_depth_has_short_cycles():
    for k in (12, 21):
        t = moon_moser_t(k)
        assert longest_cycle(stellated_triangulation(t).graph) < k


# wheel scaffold ------------------------------------------------------------


def test_wheel_scaffold_4_14():
    emb = wheel_scaffold(4, 14)
    assert (emb.graph.n, emb.graph.m) == (16, 34)
    assert {f.length for f in emb.faces} <= {3, 5}
    _structural(emb)


def test_wheel_scaffold_5_18():
    emb = wheel_scaffold(5, 18)
    assert emb.graph.n == 20
    assert {f.length for f in emb.faces} <= {3, 6}
    _structural(emb)


def test_wheel_scaffold_remainder_flag():
    with pytest.raises(ParameterError):
        wheel_scaffold(4, 16)
    emb = wheel_scaffold(4, 16, allow_remainder=True)
    odd = [f.length for f in emb.faces if f.length not in (3, 5)]
    assert len(odd) == 1
    _structural(emb)


@pytest.mark.parametrize("k,ell", [(4, 7), (3, 10), (4, 13)])
def test_family_params_rejected(k, ell):
    with pytest.raises(ParameterError):
        FamilyParams(k, ell)


def test_family_indices():
    p = FamilyParams(4, 14)
    assert [p.m(i) for i in (1, 2)] == [1, 8]
    assert [p.n_(i) for i in (1, 2)] == [5, 12]


# patches and replacement -----------------------------------------------------


def test_patch_eligibility_examples():
    assert patch_eligibility(triangle_patch(), "T'", 4).eligible
    assert patch_eligibility(k4_patch(0), "T''", 4).eligible
    bad = patch_eligibility(k4_patch(), "T'", 4)
    assert not bad.eligible and len(bad.witness) == 4
    assert not patch_eligibility(k4_patch(None), "T''", 4).eligible


def test_patch_spec_requires_triangulation():
    with pytest.raises(PatchError):
        PatchSpec(wheel_scaffold(4, 14), (0, 2, 3))


def test_replace_k4_face_with_triangle_is_identity():
    emb = embed(complete_graph(4))
    face = emb.faces[0]
    out = replace_face(emb, 0, triangle_patch(), aligned_boundary_map(face.vertices, triangle_patch()))
    assert out.graph == emb.graph
    assert sorted(f.length for f in out.faces) == [3, 3, 3, 3]


def test_replace_scaffold_face_with_k4():
    emb = wheel_scaffold(4, 14)
    face = next(f for f in emb.faces if f.length == 3 and HUB in f.vertices)
    patch = k4_patch(0)
    out = replace_face(emb, face.id, patch, aligned_boundary_map(face.vertices, patch, (0, HUB)))
    assert out.graph.n - emb.graph.n == 1
    assert out.graph.m - emb.graph.m == 3
    _structural(out)
    untouched = {frozenset(f.darts) for f in emb.faces if f.id != face.id}
    assert untouched <= {frozenset(f.darts) for f in out.faces}


def test_replace_face_rejects_reflection_and_long_faces():
    emb = wheel_scaffold(4, 14)
    face = next(f for f in emb.faces if f.length == 3)
    a, b, c = face.vertices
    patch = triangle_patch()
    x, y, z = patch.boundary
    with pytest.raises(PatchError, match="orientation"):
        replace_face(emb, face.id, patch, {x: a, y: b, z: c})
    long_face = next(f for f in emb.faces if f.length == 5)
    with pytest.raises(PatchError, match="not a 3-face"):
        replace_face(emb, long_face.id, patch, {x: a, y: b, z: c})


# the family ----------------------------------------------------------------


@pytest.mark.parametrize(
    "k,ell,tprime,tdouble",
    [
        (4, 14, triangle_patch(), k4_patch(0)),
        (4, 21, triangle_patch(), k4_patch(0)),
        (4, 14, triangle_patch(), triangle_patch()),
        (5, 18, triangle_patch(), triangle_patch()),
        (5, 27, triangle_patch(), triangle_patch()),
    ],
)
def test_gk_family_formulas_and_freeness(k, ell, tprime, tdouble):
    emb = gk_family(k, ell, tprime, tdouble)
    g = emb.graph
    assert g.n == family_order(k, ell, tprime.order, tdouble.order)
    assert g.m == family_size(k, ell, tprime.order, tdouble.order)
    if tprime.order == tdouble.order == 3:
        assert g.m == 3 * g.n - ell + 3 * (ell // (2 * k - 1)) - 6
    assert all(HUB in c for c in cycles_of_length(g, k))
    assert find_disjoint_cycles(g, CyclePattern((k, k))) is None
    _structural(emb)


def test_gk_family_with_stellated_patches_sizes():
    # enumerating 8-cycles on 160 vertices is out of reach; sizes only
    patch = stellated_patch(1)
    emb = gk_family(8, 30, patch, patch)
    assert emb.graph.n == family_order(8, 30, 7, 7) == 160
    assert emb.graph.m == family_size(8, 30, 7, 7)
    _structural(emb)


def test_gk_family_triangles_is_scaffold():
    a = gk_family(4, 14, triangle_patch(), triangle_patch()).graph
    assert a == wheel_scaffold(4, 14).graph


def test_gk_family_rejections():
    with pytest.raises(PatchError, match="hub"):
        gk_family(4, 14, triangle_patch(), k4_patch(0), special_at_hub=False)
    with pytest.raises(PatchError, match="T'") as exc:
        gk_family(4, 14, k4_patch(), k4_patch(0))
    assert exc.value.witness is not None
    with pytest.raises(ParameterError):
        gk_family(4, 13, triangle_patch(), k4_patch(0))


@pytest.mark.parametrize("ell,n,e", [(14, 30, 76), (21, 44, 114)])
def test_g0(ell, n, e):
    emb = g0(ell)
    assert (emb.graph.n, emb.graph.m) == (n, e)
    assert 7 * e == 19 * (n - 2)
    assert find_disjoint_cycles(emb.graph, CyclePattern((4, 4))) is None


def test_g0_rejects_short_rim():
    with pytest.raises(ParameterError):
        g0(7)
