from __future__ import annotations

import json

import pytest

from planturan.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main
from planturan.constructions import matching_join
from planturan.graph import complete_graph, cycle_graph, encode_graph6


def _run(capsys, argv):
    code = main(argv)
    cap = capsys.readouterr()
    lines = [json.loads(x) for x in cap.out.splitlines()]
    return code, lines, cap.err


def test_construct_matching_join(capsys, tmp_path):
    code, lines, _ = _run(capsys, ["construct", "matching-join", "--n", "20", "--out", str(tmp_path)])
    assert code == EXIT_OK
    report, manifest = lines[0], lines[-1]["manifest"]
    assert report["edges"] == 46 and report["checks"]["c3c4_free"]
    assert report["checks"]["interior_edges"] == 14
    assert manifest["ok"] and manifest["parameters"] == {"family": "matching-join", "n": 20}
    assert {p.name for p in tmp_path.iterdir()} == {
        "matching-join.g6", "matching-join.json", "matching-join.report.json", "manifest.json",
    }
    assert json.loads((tmp_path / "manifest.json").read_text())["command"] == "construct"


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "g0", "--ell", "14"],
        ["construct", "stellated", "--t", "1"],
        ["construct", "wheel", "--k", "5", "--ell", "18"],
        ["construct", "gk-family", "--k", "4", "--ell", "14", "--tprime", "triangle", "--tdoubleprime", "K4"],
    ],
)
def test_construct_families_pass(capsys, argv):
    code, lines, _ = _run(capsys, argv)
    assert code == EXIT_OK
    assert lines[-1]["manifest"]["ok"]


def test_construct_reports_circumference(capsys):
    code, lines, _ = _run(capsys, ["construct", "stellated", "--t", "2"])
    checks = lines[0]["checks"]
    assert code == EXIT_OK
    assert checks["circumference"] == 14 and checks["circumference_complete"] and checks["below_bound"]


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["construct", "gk-family", "--k", "4", "--ell", "13"], "ell"),
        (["construct", "gk-family", "--tprime", "K4"], "T'"),
        (["construct", "gk-family", "--tprime", "stellated:x"], "stellation"),
        (["construct", "matching-join", "--n", "2"], "n"),
    ],
)
def test_construct_usage_errors(capsys, argv, needle):
    code, lines, err = _run(capsys, argv)
    assert code == EXIT_USAGE
    assert lines == [] and needle in err


def test_check_exit_codes(capsys, tmp_path):
    path = tmp_path / "in.g6"
    path.write_bytes(encode_graph6(matching_join(10).graph) + b"\n" + encode_graph6(complete_graph(7)) + b"\n")
    code, lines, _ = _run(capsys, ["check", str(path)])
    assert code == EXIT_CHECK_FAILED
    assert [row["free"] for row in lines[:-1]] == [True, False]
    assert sorted(len(c) for c in lines[1]["witness"]) == [3, 4]
    assert lines[-1]["manifest"]["inputs"] == [str(path)]

    path.write_bytes(encode_graph6(matching_join(10).graph) + b"\n")
    assert main(["check", str(path), "--pattern", "4,4"]) == EXIT_OK


def test_check_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.g6"
    path.write_bytes(b"~~~\n")
    code, _, err = _run(capsys, ["check", str(path)])
    assert code == EXIT_USAGE and "offset" in err
    assert main(["check", str(path), "--pattern", "2"]) == EXIT_USAGE


def test_audit_generate(capsys):
    code, lines, _ = _run(capsys, ["audit", "--generate", "6", "--lemma", "hmax-catalog", "--lemma", "eout-matching"])
    summary = lines[-1]["manifest"]["result"]
    assert code == EXIT_OK
    assert set(summary["lemmas"]) == {"hmax-catalog", "eout-matching"}
    assert summary["graphs"] == 142


def test_audit_file_reports_skips(capsys, tmp_path):
    path = tmp_path / "corpus.g6"
    corpus = (matching_join(9).graph, complete_graph(5), cycle_graph(5))
    path.write_bytes(b"\n".join(encode_graph6(g) for g in corpus) + b"\n")
    code, lines, _ = _run(capsys, ["audit", str(path)])
    assert code == EXIT_OK
    assert lines[-1]["manifest"]["result"]["skipped"] == {"non-planar": 1, "contains-c3c4": 0}


def test_audit_k4_pair_fails_with_witness(capsys, tmp_path):
    # the two Θ-graphs of opposite K4 edges share all four vertices
    path = tmp_path / "k4.g6"
    path.write_bytes(encode_graph6(complete_graph(4)) + b"\n")
    code, lines, _ = _run(capsys, ["audit", str(path), "--lemma", "pair-class"])
    assert code == EXIT_CHECK_FAILED
    assert lines[0]["status"] == "fail" and len(lines[0]["witness"]) == 2


def test_audit_random_is_seeded(capsys):
    _, a, _ = _run(capsys, ["audit", "--random", "20", "--order", "7", "--seed", "4"])
    _, b, _ = _run(capsys, ["audit", "--random", "20", "--order", "7", "--seed", "4"])
    assert a[:-1] == b[:-1]


def test_audit_needs_one_source(capsys):
    assert main(["audit"]) == EXIT_USAGE
    assert main(["audit", "--generate", "5", "--random", "3"]) == EXIT_USAGE
    assert main(["audit", "--generate", "11"]) == EXIT_USAGE


def test_search_with_formula(capsys, tmp_path):
    code, lines, _ = _run(capsys, ["search", "--n", "7", "--formula", "floor(5*n/2)-4", "--jobs", "1", "--out", str(tmp_path)])
    assert code == EXIT_OK
    out = lines[0]
    assert out["max_edges"] == 14 and out["witness_count"] == 1
    assert out["formula"] == {"expression": "floor(5*n/2)-4", "value": 13, "relation": "above"}
    assert (tmp_path / "witnesses.g6").read_text().count("\n") == 1
    assert (tmp_path / "search.csv").read_text().startswith("n,pattern,max_edges")


@pytest.mark.parametrize(
    "argv",
    [
        ["search", "--n", "11"],
        ["search", "--n", "7", "--formula", "n +"],
        ["search", "--n", "7", "--formula", "n / 2"],
        ["search", "--n", "7", "--pattern", "1,4"],
    ],
)
def test_search_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
