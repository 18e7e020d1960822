"""Exact planar Turán numbers at desk scale.

Every planar graph on n >= 3 vertices is a spanning subgraph of a
triangulation, and every non-maximal planar graph gains an edge while
staying planar.  So the planar graphs with exactly m edges are precisely
the single-edge deletions of those with m + 1 edges.  The engine

1. enumerates triangulations up to isomorphism by breadth-first search over
   edge flips (the flip graph of triangulations is connected), and
2. descends one edge at a time, deduplicating by canonical form and trying
   one edge per orbit of the automorphisms found by the canonical labeller,

stopping at the first edge level that contains a pattern-free graph.
"""

from __future__ import annotations

import ast
import csv
import io
import json
import math
import operator
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .canon import canonical_labelling, canonical_masks
from .graph import Graph, encode_graph6
from .patterns import CyclePattern, masks_pattern_free

MAX_N = 10
WITNESS_CAP = 10_000
JOBS_ENV = "PLANTURAN_JOBS"


class SearchLimitError(ValueError):
    """Requested order is beyond what the exhaustive engine supports."""


def _check_n(n: int) -> None:
    if n < 1:
        raise SearchLimitError(f"n must be >= 1, got {n}")
    if n > MAX_N:
        raise SearchLimitError(f"n={n} exceeds the exhaustive search limit {MAX_N}")


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# triangulations by flips
# ---------------------------------------------------------------------------

Masks = tuple[int, ...]


def _edges_of(masks: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for u, m in enumerate(masks):
        m >>= u + 1
        v = u + 1
        while m:
            if m & 1:
                out.append((u, v))
            m >>= 1
            v += 1
    return out


def _orbit_reps(edges: list[tuple[int, int]], gens: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """One edge from each orbit of the group generated by ``gens``."""
    if not gens:
        return edges
    seen: set[tuple[int, int]] = set()
    reps = []
    for e in edges:
        if e in seen:
            continue
        reps.append(e)
        stack = [e]
        seen.add(e)
        while stack:
            a, b = stack.pop()
            for g in gens:
                x, y = g[a], g[b]
                f = (x, y) if x < y else (y, x)
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
    return reps


def _bipyramid_triangles(n: int) -> list[tuple[int, int, int]]:
    if n == 3:
        return [(0, 1, 2), (0, 2, 1)]
    if n == 4:
        return [(0, 1, 2), (0, 3, 1), (1, 3, 2), (2, 3, 0)]
    k = n - 2
    ring = list(range(2, n))
    tris = []
    for i in range(k):
        a, b = ring[i], ring[(i + 1) % k]
        tris.append((0, a, b))
        tris.append((1, b, a))
    return tris


def _third(tris: Iterable[tuple[int, int, int]]) -> dict[tuple[int, int], int]:
    d = {}
    for a, b, c in tris:
        d[(a, b)] = c
        d[(b, c)] = a
        d[(c, a)] = b
    return d


def _masks_from_third(n: int, third: dict[tuple[int, int], int]) -> Masks:
    masks = [0] * n
    for a, b in third:
        masks[a] |= 1 << b
    return tuple(masks)


def _relabel_third(third: dict[tuple[int, int], int], order: Sequence[int]) -> dict[tuple[int, int], int]:
    pos = {v: i for i, v in enumerate(order)}
    return {(pos[a], pos[b]): pos[c] for (a, b), c in third.items()}


def triangulations(n: int) -> list[Masks]:
    """All triangulations on ``n`` vertices up to isomorphism (canonical masks, sorted)."""
    _check_n(n)
    if n < 3:
        return [tuple((((1 << n) - 1) & ~(1 << v)) for v in range(n))]
    start = _third(_bipyramid_triangles(n))
    lab = canonical_labelling(_masks_from_third(n, start))
    start = _relabel_third(start, lab.order)
    found: dict[int, dict[tuple[int, int], int]] = {lab.code: start}
    frontier = [(start, lab.generators)]
    while frontier:
        nxt = []
        for third, gens in frontier:
            masks = _masks_from_third(n, third)
            for x, y in _orbit_reps(_edges_of(masks), gens):
                a, b = third[(x, y)], third[(y, x)]
                if a == b or (masks[a] >> b) & 1:
                    continue
                new = dict(third)
                for d in ((x, y), (y, a), (a, x), (y, x), (x, b), (b, y)):
                    del new[d]
                new.update(_third([(a, x, b), (b, y, a)]))
                lab2 = canonical_labelling(_masks_from_third(n, new))
                if lab2.code in found:
                    continue
                new = _relabel_third(new, lab2.order)
                found[lab2.code] = new
                nxt.append((new, lab2.generators))
        frontier = nxt
    return sorted(_masks_from_third(n, t) for t in found.values())


# ---------------------------------------------------------------------------
# descent
# ---------------------------------------------------------------------------


def _children(masks: Masks) -> dict[int, Masks]:
    """Canonical single-edge deletions of ``masks`` keyed by canonical code."""
    _, _, gens = canonical_masks(masks)
    out: dict[int, Masks] = {}
    for u, v in _orbit_reps(_edges_of(masks), gens):
        child = list(masks)
        child[u] &= ~(1 << v)
        child[v] &= ~(1 << u)
        (_, code), cm, _ = canonical_masks(child)
        out.setdefault(code, cm)
    return out


def _children_batch(batch: list[Masks]) -> list[tuple[int, Masks]]:
    merged: dict[int, Masks] = {}
    for m in batch:
        for code, cm in _children(m).items():
            merged.setdefault(code, cm)
    return sorted(merged.items())


def _free_batch(args: tuple[list[Masks], tuple[int, ...]]) -> list[bool]:
    batch, lengths = args
    return [masks_pattern_free(m, lengths) for m in batch]


def _chunks(items: list, jobs: int) -> list[list]:
    size = max(1, math.ceil(len(items) / (jobs * 4)))
    return [items[i : i + size] for i in range(0, len(items), size)]


class _Pool:
    """Map over chunks, in-process for one job, preserving chunk order."""

    def __init__(self, jobs: int) -> None:
        self.jobs = jobs
        self.ex = ProcessPoolExecutor(jobs) if jobs > 1 else None

    def map(self, fn: Callable, chunks: list) -> list:
        if self.ex is None:
            return [fn(c) for c in chunks]
        return list(self.ex.map(fn, chunks))

    def close(self) -> None:
        if self.ex is not None:
            self.ex.shutdown()


def _next_level(level: list[Masks], pool: _Pool) -> list[Masks]:
    merged: dict[int, Masks] = {}
    for part in pool.map(_children_batch, _chunks(level, pool.jobs)):
        for code, cm in part:
            merged.setdefault(code, cm)
    return [merged[c] for c in sorted(merged)]


def levels(n: int, min_edges: int = 0, jobs: int | None = None) -> Iterator[tuple[int, list[Masks]]]:
    """Yield ``(m, classes)`` for m = top edge count down to ``min_edges``."""
    _check_n(n)
    pool = _Pool(jobs or default_jobs())
    try:
        level = triangulations(n)
        m = sum(bin(x).count("1") for x in level[0]) // 2
        while m >= min_edges:
            yield m, level
            if m == 0:
                break
            level = _next_level(level, pool)
            m -= 1
    finally:
        pool.close()


def enumerate_planar(n: int, min_edges: int = 0, jobs: int | None = None) -> Iterator[Graph]:
    """Every planar graph on ``n`` vertices with at least ``min_edges`` edges, once per isomorphism class."""
    for _, level in levels(n, min_edges, jobs):
        for m in level:
            yield Graph.from_masks(m)


# ---------------------------------------------------------------------------
# planar Turán numbers
# ---------------------------------------------------------------------------


@dataclass
class LevelStat:
    edges: int
    classes: int
    pattern_free: int


@dataclass
class SearchReport:
    n: int
    pattern: CyclePattern
    max_edges: int
    witnesses: list[str]
    witness_count: int
    graphs_examined: int
    wall_time: float
    levels: list[LevelStat] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pattern": str(self.pattern),
            "max_edges": self.max_edges,
            "witness_count": self.witness_count,
            "witnesses": self.witnesses,
            "graphs_examined": self.graphs_examined,
            "levels": [[s.edges, s.classes, s.pattern_free] for s in self.levels],
            "seconds": round(self.wall_time, 3),
        }

    def summary(self) -> dict:
        """Timing-free digest, equal across reruns with equal inputs."""
        d = self.to_json()
        del d["seconds"]
        return d

    CSV_FIELDS = ("n", "pattern", "max_edges", "witness_count", "graphs_examined", "seconds")

    def csv_row(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        d = self.to_json()
        w.writerow([d[k] for k in self.CSV_FIELDS])
        return buf.getvalue()


def planar_turan(n: int, pattern: CyclePattern, jobs: int | None = None) -> SearchReport:
    """Maximum edges of an ``n``-vertex planar graph free of ``pattern``.

    Witnesses are graph6 strings of canonical representatives of every
    extremal class (at most ``WITNESS_CAP`` are listed).
    """
    _check_n(n)
    t0 = time.perf_counter()
    jobs = jobs or default_jobs()
    pool = _Pool(jobs)
    lengths = pattern.lengths
    stats: list[LevelStat] = []
    examined = 0
    try:
        level = triangulations(n)
        m = sum(bin(x).count("1") for x in level[0]) // 2
        while True:
            flags: list[bool] = []
            for part in pool.map(_free_batch, [(c, lengths) for c in _chunks(level, jobs)]):
                flags += part
            examined += len(level)
            free = [g for g, ok in zip(level, flags) if ok]
            stats.append(LevelStat(m, len(level), len(free)))
            if free:
                break
            level = _next_level(level, pool)
            m -= 1
    finally:
        pool.close()
    codes = sorted(encode_graph6(Graph.from_masks(g)).decode() for g in free)
    return SearchReport(n, pattern, m, codes[:WITNESS_CAP], len(codes), examined, time.perf_counter() - t0, stats)


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_FUNCS = {"floor": math.floor, "ceil": math.ceil, "min": min, "max": max}


class FormulaError(ValueError):
    pass


def parse_formula(expr: str) -> Callable[[int], int]:
    """Compile an arithmetic expression in ``n`` with exact rational arithmetic.

    Allowed: integers, ``n``, + - * / // % **, unary minus, and the
    functions floor, ceil, min, max.  The value must be an integer.
    """
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise FormulaError(f"cannot parse formula {expr!r}: {exc.msg}") from None

    def ev(node: ast.AST, n: int):
        if isinstance(node, ast.Expression):
            return ev(node.body, n)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id == "n":
            return Fraction(n)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return Fraction(_BINOPS[type(node.op)](ev(node.left, n), ev(node.right, n)))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand, n)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS and not node.keywords:
            return Fraction(_FUNCS[node.func.id](*(ev(a, n) for a in node.args)))
        raise FormulaError(f"unsupported element in formula {expr!r}: {ast.dump(node)[:60]}")

    def value(n: int) -> Fraction:
        try:
            return ev(tree, n)
        except ZeroDivisionError:
            raise FormulaError(f"formula {expr!r} divides by zero at n={n}") from None

    def f(n: int) -> int:
        v = value(n)
        if v.denominator != 1:
            raise FormulaError(f"formula {expr!r} is not an integer at n={n}: {v}")
        return int(v)

    try:
        value(4)  # surface unsupported syntax early
    except FormulaError as exc:
        if "divides by zero" not in str(exc):
            raise
    return f


@dataclass(frozen=True)
class FormulaCheck:
    n: int
    searched: int
    formula: int

    @property
    def relation(self) -> str:
        if self.searched == self.formula:
            return "equal"
        return "below" if self.searched < self.formula else "above"

    def to_json(self) -> dict:
        return {"n": self.n, "searched": self.searched, "formula": self.formula, "relation": self.relation}


def verify_formula(ns: Iterable[int], pattern: CyclePattern, formula: Callable[[int], int] | str, jobs: int | None = None) -> list[FormulaCheck]:
    """Compare searched values against ``formula``; mismatches are data, not errors.

    ``relation`` reads "searched is below/above the formula".
    """
    f = parse_formula(formula) if isinstance(formula, str) else formula
    return [FormulaCheck(n, planar_turan(n, pattern, jobs).max_edges, f(n)) for n in ns]


def report_json(report: SearchReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True)
