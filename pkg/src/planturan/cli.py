"""Command-line entry point: construct, check, audit and search.

Every command prints JSON to stdout (``audit`` prints JSON lines) and ends
with one manifest line describing the run.  With ``--out DIR`` the same
artifacts are also written to files.  The exit status is 0 exactly when
every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from importlib import metadata
from pathlib import Path
from typing import Callable

from .constructions import (
    HUB,
    FamilyParams,
    ParameterError,
    PatchError,
    PatchSpec,
    family_order,
    family_size,
    g0,
    gk_family,
    k4_patch,
    matching_join,
    matching_join_edges,
    stellated_order,
    stellated_patch,
    stellated_triangulation,
    triangle_patch,
    wheel_scaffold,
)
from .embedding import PlaneEmbedding, check_embedding, embed, is_planar
from .graph import Graph6Error, encode_graph6, read_graph6_lines
from .patterns import C3C4, CyclePattern, circumference, cycles_of_length, find_disjoint_cycles, vertex_connectivity_at_least
from .sampling import random_planar_graph
from .search import FormulaCheck, FormulaError, SearchLimitError, default_jobs, enumerate_planar, parse_formula, planar_turan
from .theta import LEMMAS, CorpusError, audit_embedding, interior_edges

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


class Run:
    """Collects outputs and the manifest for one invocation."""

    def __init__(self, command: str, params: dict, out: str | None) -> None:
        self.command = command
        self.params = params
        self.out = Path(out) if out else None
        self.inputs: list[str] = []
        self.outputs: list[str] = []
        self.t0 = time.perf_counter()
        if self.out:
            self.out.mkdir(parents=True, exist_ok=True)

    def emit(self, obj: dict) -> None:
        print(json.dumps(obj, sort_keys=True))

    def write(self, name: str, text: str) -> None:
        if self.out:
            path = self.out / name
            path.write_text(text)
            self.outputs.append(str(path))

    def finish(self, result: dict, ok: bool) -> int:
        manifest = {
            "command": self.command,
            "parameters": self.params,
            "versions": {"artifact": _version(), "python": sys.version.split()[0]},
            "inputs": self.inputs,
            "outputs": self.outputs,
            "wall_time": round(time.perf_counter() - self.t0, 3),
            "result": result,
            "ok": ok,
        }
        self.write("manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        manifest["outputs"] = self.outputs
        print(json.dumps({"manifest": manifest}, sort_keys=True))
        return EXIT_OK if ok else EXIT_CHECK_FAILED


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def _patch(spec: str, special: int | None = None) -> PatchSpec:
    if spec == "triangle":
        return triangle_patch()
    if spec == "K4":
        return k4_patch(special)
    if spec.startswith("stellated:"):
        rounds = spec.split(":", 1)[1]
        if not rounds.isdigit():
            raise ParameterError(f"stellation rounds must be a non-negative integer, got {rounds!r}")
        return stellated_patch(int(rounds))
    raise ParameterError(f"unknown patch {spec!r} (triangle, K4, stellated:T)")


def _structure(emb: PlaneEmbedding) -> dict:
    g = emb.graph
    fv = emb.face_vector()
    handshake = sum(f.length for f in emb.faces) == 2 * g.m
    euler = (g.n - g.m + len(emb.faces) == 2) if g.is_connected() else None
    try:
        check_embedding(emb)
        valid = True
    except ValueError:
        valid = False
    return {
        "n": g.n,
        "edges": g.m,
        "faces": len(emb.faces),
        "face_vector": {str(k): v for k, v in sorted(fv.items())},
        "handshake": handshake,
        "euler": euler,
        "embedding_valid": valid,
    }


def _construct(args: argparse.Namespace) -> tuple[PlaneEmbedding, dict]:
    fam = args.family
    checks: dict[str, object] = {}
    if fam == "matching-join":
        emb = matching_join(args.n)
        checks["expected_edges"] = matching_join_edges(args.n)
        checks["edges_match"] = emb.graph.m == matching_join_edges(args.n)
        checks["c3c4_free"] = find_disjoint_cycles(emb.graph, C3C4) is None
        ni = len(interior_edges(emb))
        checks["interior_edges"] = ni
        if args.n >= 8:
            checks["interior_edges_match"] = ni == args.n // 2 + 4
    elif fam == "stellated":
        emb = stellated_triangulation(args.t)
        n = emb.graph.n
        checks["order_match"] = n == stellated_order(args.t)
        checks["triangulation"] = all(f.length == 3 and f.is_cycle for f in emb.faces)
        checks["three_connected"] = vertex_connectivity_at_least(emb.graph, 3)
        res = circumference(emb.graph, args.budget)
        bound = 3.5 * n ** math.log(2, 3)
        checks["circumference"] = res.length
        checks["circumference_complete"] = res.complete
        checks["circumference_bound"] = round(bound, 6)
        checks["below_bound"] = res.length < bound if res.complete else None
    elif fam == "wheel":
        p = FamilyParams(args.k, args.ell, args.allow_remainder)
        emb = wheel_scaffold(p)
        checks["size_match"] = emb.graph.m == 2 * p.ell + 3 * p.blocks
        odd = [f.length for f in emb.faces if f.length not in (3, p.k + 1)]
        checks["irregular_faces"] = odd
        checks["face_inventory"] = len(odd) <= 1 and (p.allow_remainder or not odd)
    elif fam in ("gk-family", "g0"):
        if fam == "g0":
            k, ell = 4, args.ell
            emb = g0(ell)
            t1, t2 = triangle_patch(), k4_patch(0)
        else:
            k, ell = args.k, args.ell
            t1 = _patch(args.tprime)
            t2 = _patch(args.tdoubleprime, args.special)
            emb = gk_family(k, ell, t1, t2, allow_remainder=args.allow_remainder)
        g = emb.graph
        checks["order_match"] = g.n == family_order(k, ell, t1.order, t2.order)
        checks["size_match"] = g.m == family_size(k, ell, t1.order, t2.order)
        key = "two_c4_free" if k == 4 else f"two_c{k}_free"
        checks[key] = find_disjoint_cycles(g, CyclePattern((k, k))) is None
        checks["k_cycles_through_hub"] = all(HUB in c for c in cycles_of_length(g, k))
        if fam == "g0":
            checks["edges_19_7"] = 7 * g.m == 19 * (g.n - 2)
    else:  # argparse restricts choices
        raise ParameterError(f"unknown family {fam}")
    return emb, checks


FAMILY_PARAMS = {
    "matching-join": ("n",),
    "stellated": ("t", "budget"),
    "wheel": ("k", "ell", "allow_remainder"),
    "gk-family": ("k", "ell", "tprime", "tdoubleprime", "special", "allow_remainder"),
    "g0": ("ell",),
}


def cmd_construct(args: argparse.Namespace) -> int:
    keys = FAMILY_PARAMS[args.family]
    params = {"family": args.family, **{k: getattr(args, k) for k in keys}}
    run = Run("construct", params, args.out)
    try:
        emb, checks = _construct(args)
    except (ParameterError, PatchError) as exc:
        return _fail(str(exc))
    report = {"family": args.family, **_structure(emb), "checks": checks}
    report["graph6"] = encode_graph6(emb.graph).decode()
    run.emit(report)
    stem = args.family
    run.write(f"{stem}.g6", report["graph6"] + "\n")
    run.write(f"{stem}.json", emb.dumps() + "\n")
    run.write(f"{stem}.report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    structural = report["handshake"] and report["embedding_valid"] and report["euler"] is not False
    ok = structural and all(v is not False for v in checks.values() if isinstance(v, bool) or v is None)
    summary = {"n": report["n"], "edges": report["edges"], **{k: v for k, v in checks.items() if isinstance(v, (bool, int))}}
    return run.finish(summary, ok)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _read_graphs(path: str):
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return read_graph6_lines(data)


def cmd_check(args: argparse.Namespace) -> int:
    run = Run("check", {"input": args.input, "pattern": args.pattern}, args.out)
    run.inputs.append(args.input)
    try:
        pattern = CyclePattern.parse(args.pattern)
        graphs = _read_graphs(args.input)
    except Graph6Error as exc:
        return _fail(f"cannot parse {args.input}: {exc}")
    except (ValueError, OSError) as exc:
        return _fail(str(exc))
    lines = []
    free_count = 0
    for i, g in enumerate(graphs):
        w = find_disjoint_cycles(g, pattern)
        row = {"index": i, "graph6": encode_graph6(g).decode(), "pattern": str(pattern), "free": w is None}
        if w is not None:
            row["witness"] = [list(c) for c in w.cycles]
        else:
            free_count += 1
        run.emit(row)
        lines.append(json.dumps(row, sort_keys=True))
    run.write("check.jsonl", "".join(x + "\n" for x in lines))
    return run.finish({"graphs": len(graphs), "free": free_count}, free_count == len(graphs))


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------


def cmd_audit(args: argparse.Namespace) -> int:
    lemmas = args.lemma or list(LEMMAS)
    params = {"input": args.input, "generate": args.generate, "random": args.random, "seed": args.seed, "lemma": lemmas}
    run = Run("audit", params, args.out)
    if sum(x is not None for x in (args.input, args.generate, args.random)) != 1:
        return _fail("give exactly one of a corpus file, --generate N or --random COUNT")
    bad = sorted(set(lemmas) - set(LEMMAS))
    if bad:
        return _fail(f"unknown lemma ids {bad}; choose from {list(LEMMAS)}")
    try:
        if args.input is not None:
            run.inputs.append(args.input)
            graphs = _read_graphs(args.input)
        elif args.generate is not None:
            graphs = list(enumerate_planar(args.generate, 0, args.jobs))
        else:
            rng = random.Random(args.seed)
            graphs = [random_planar_graph(args.order, rng) for _ in range(args.random)]
    except Graph6Error as exc:
        return _fail(f"cannot parse {args.input}: {exc}")
    except (SearchLimitError, OSError, ValueError) as exc:
        return _fail(str(exc))
    counts = {lemma: {"pass": 0, "fail": 0, "not-applicable": 0} for lemma in lemmas}
    skipped = {"non-planar": 0, "contains-c3c4": 0}
    lines = []
    for g in graphs:
        if not is_planar(g):
            skipped["non-planar"] += 1
            note = {"graph": encode_graph6(g).decode(), "skipped": "non-planar"}
            run.emit(note)
            lines.append(json.dumps(note, sort_keys=True))
            continue
        try:
            results = audit_embedding(embed(g), lemmas)
        except CorpusError as exc:
            skipped["contains-c3c4"] += 1
            if args.input is not None:
                note = {"graph": exc.graph6, "skipped": "contains C3+C4", "witness": [list(c) for c in exc.witness]}
                run.emit(note)
                lines.append(json.dumps(note, sort_keys=True))
            continue
        for r in results:
            counts[r.lemma][r.status] += 1
            run.emit(r.to_json())
            lines.append(json.dumps(r.to_json(), sort_keys=True))
    run.write("audit.jsonl", "".join(x + "\n" for x in lines))
    summary = {"graphs": len(graphs), "skipped": skipped, "lemmas": counts}
    return run.finish(summary, all(c["fail"] == 0 for c in counts.values()))


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def cmd_search(args: argparse.Namespace) -> int:
    jobs = args.jobs or default_jobs()
    params = {"n": args.n, "pattern": args.pattern, "formula": args.formula, "jobs": jobs}
    run = Run("search", params, args.out)
    try:
        pattern = CyclePattern.parse(args.pattern)
        formula: Callable[[int], int] | None = parse_formula(args.formula) if args.formula else None
        value = formula(args.n) if formula is not None else None
        report = planar_turan(args.n, pattern, jobs)
    except (SearchLimitError, FormulaError, ValueError) as exc:
        return _fail(str(exc))
    out = report.to_json()
    out["csv"] = report.csv_row().strip()
    if value is not None:
        check = FormulaCheck(args.n, report.max_edges, value)
        out["formula"] = {"expression": args.formula, "value": value, "relation": check.relation}
    run.emit(out)
    run.write("search.json", json.dumps(out, indent=2, sort_keys=True) + "\n")
    run.write("search.csv", ",".join(report.CSV_FIELDS) + "\n" + report.csv_row())
    run.write("witnesses.g6", "".join(w + "\n" for w in report.witnesses))
    summary = report.summary()
    summary.pop("witnesses")
    return run.finish(summary, True)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planturan", description="Planar Turán experiments for disjoint-cycle patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an explicit graph family and self-check it")
    p.add_argument("family", choices=["matching-join", "stellated", "wheel", "gk-family", "g0"])
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--t", type=int, default=1, help="stellation rounds")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--ell", type=int, default=14)
    p.add_argument("--tprime", default="triangle", help="triangle, K4 or stellated:T")
    p.add_argument("--tdoubleprime", default="K4", help="triangle, K4 or stellated:T")
    p.add_argument("--special", type=int, default=0, help="special vertex of a K4 T'' patch")
    p.add_argument("--allow-remainder", action="store_true")
    p.add_argument("--budget", type=int, default=None, help="node budget for circumference search")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="test graphs in a graph6 file for a disjoint-cycle pattern")
    p.add_argument("input", help="graph6 file, or - for stdin")
    p.add_argument("--pattern", default="3,4")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("audit", help="audit the Θ-graph lemmas on a corpus")
    p.add_argument("input", nargs="?")
    p.add_argument("--generate", type=int, help="audit all planar graphs on this many vertices")
    p.add_argument("--random", type=int, help="audit this many random planar graphs")
    p.add_argument("--order", type=int, default=8, help="order of random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lemma", action="append", choices=list(LEMMAS))
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("search", help="exact planar Turán number by exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", default="3,4")
    p.add_argument("--formula", help="expression in n to compare against, e.g. 'floor(5*n/2)-4'")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
