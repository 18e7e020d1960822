"""Planar Turán numbers for vertex-disjoint cycle patterns."""

from .canon import canonical_form
from .constructions import (
    PatchSpec,
    g0,
    gk_family,
    matching_join,
    moon_moser_t,
    replace_face,
    stellated_triangulation,
    wheel_scaffold,
)
from .embedding import PlaneEmbedding, embed, is_planar, test_planarity
from .graph import Graph, build_graph, decode_graph6, encode_graph6
from .patterns import C3C4, TWO_C4, CyclePattern, find_disjoint_cycles, is_pattern_free, longest_cycle
from .search import enumerate_planar, planar_turan, verify_formula
from .theta import HClass, classify_pair, generating_closure, interior_edges, lemma_audit, theta_graph

__all__ = [
    "C3C4",
    "TWO_C4",
    "CyclePattern",
    "Graph",
    "HClass",
    "PatchSpec",
    "PlaneEmbedding",
    "build_graph",
    "canonical_form",
    "classify_pair",
    "decode_graph6",
    "embed",
    "encode_graph6",
    "enumerate_planar",
    "find_disjoint_cycles",
    "g0",
    "generating_closure",
    "gk_family",
    "interior_edges",
    "is_pattern_free",
    "is_planar",
    "lemma_audit",
    "longest_cycle",
    "matching_join",
    "moon_moser_t",
    "planar_turan",
    "replace_face",
    "stellated_triangulation",
    "test_planarity",
    "theta_graph",
    "verify_formula",
    "wheel_scaffold",
]
