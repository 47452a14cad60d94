import json
import subprocess
import sys

import pytest

from w4struct.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from w4struct.formats import format_graph, parse_graph
from w4struct.generators import complete, doubled_cycle, wall, wheel
from w4struct.immersion import W4


def _write(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(format_graph(g))
    return str(p)


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_gen_writes_canonical_graph(capsys):
    assert main(["gen", "wheel", "4"]) == EXIT_OK
    assert parse_graph(capsys.readouterr().out) == wheel(4)


def test_gen_usage_errors(capsys):
    assert main(["gen", "wheel"]) == EXIT_USAGE
    assert main(["gen", "wheel", "x"]) == EXIT_USAGE
    assert main(["gen", "random", "5", "6"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
    assert main(["no-such-command"]) == EXIT_USAGE


def test_gen_random_connected(capsys):
    assert main(["gen", "random", "6", "9", "2", "4", "--connected"]) == EXIT_OK
    g = parse_graph(capsys.readouterr().out)
    assert g.n == 6 and g.m == 9 and g.is_connected()


def test_check_w4_and_expect(tmp_path, capsys):
    k5 = _write(tmp_path, "k5.txt", complete(5))
    w = _write(tmp_path, "wall.txt", wall(3))
    assert main(["check-w4", k5, "--format", "json"]) == EXIT_OK
    body = _json(capsys)
    assert body["result"] == "yes" and body["tool"] == "w4struct" and body["command"] == "check-w4"
    assert main(["check-w4", w, "--expect", "no"]) == EXIT_OK
    assert main(["check-w4", w, "--expect", "yes"]) == EXIT_FAIL
    out = capsys.readouterr().out
    assert out.startswith("# w4struct ") and "MISMATCH" in out


def test_budget_exit_code(tmp_path, capsys):
    g = _write(tmp_path, "dc.txt", doubled_cycle(9))
    assert main(["check-w4", g, "--node-budget", "50"]) == EXIT_BUDGET
    assert "unknown" in capsys.readouterr().out


def test_model_out_and_certify(tmp_path, capsys):
    k5 = _write(tmp_path, "k5.txt", complete(5))
    h = _write(tmp_path, "w4.txt", W4)
    model = str(tmp_path / "m.json")
    assert main(["immerse", h, k5, "--model-out", model]) == EXIT_OK
    assert main(["certify", k5, h, model]) == EXIT_OK
    assert "valid: yes" in capsys.readouterr().out
    data = json.loads(open(model).read())
    data["edge_map"][0] = data["edge_map"][1]
    (tmp_path / "bad.json").write_text(json.dumps(data))
    assert main(["certify", k5, h, str(tmp_path / "bad.json"), "--format", "json"]) == EXIT_FAIL
    assert _json(capsys)["valid"] is False
    (tmp_path / "junk.json").write_text("[1, 2]")
    assert main(["certify", k5, h, str(tmp_path / "junk.json")]) == EXIT_USAGE


def test_cuts_and_impsep(tmp_path, capsys):
    g = _write(tmp_path, "dc.txt", doubled_cycle(4).disjoint_union(doubled_cycle(4)).add_edges([(0, 4)]))
    assert main(["cuts", g, "--format", "json"]) == EXIT_OK
    body = _json(capsys)
    assert body["count"] == 1 and body["cuts"][0]["order"] == 1
    assert main(["cuts", g, "--max-order", "4"]) == EXIT_USAGE
    w = _write(tmp_path, "w.txt", wheel(4))
    assert main(["impsep", w, "--x", "0", "--y", "4", "--k", "4", "--format", "json"]) == EXIT_OK
    body = _json(capsys)
    assert body["within_bound"] and body["count"] == len(body["separators"])
    assert main(["impsep", w, "--x", "0,a", "--y", "4", "--k", "1"]) == EXIT_USAGE
    assert main(["impsep", w, "--x", "0", "--y", "0", "--k", "1"]) == EXIT_USAGE


def test_decompose_recompose(tmp_path, capsys):
    src = _write(tmp_path, "wall.txt", wall(3))
    tree = str(tmp_path / "t.json")
    out = str(tmp_path / "back.txt")
    assert main(["decompose", src, "-o", tree]) == EXIT_OK
    doc = json.loads(open(tree).read())
    assert doc["vertex_count"] == wall(3).n and doc["tool"] == "w4struct"
    assert main(["recompose", tree, "-o", out, "--check", src]) == EXIT_OK
    assert parse_graph(open(out).read()) == wall(3)
    other = _write(tmp_path, "k5.txt", complete(5))
    assert main(["recompose", tree, "-o", out, "--check", other]) == EXIT_FAIL
    (tmp_path / "broken.json").write_text('{"t": 1}')
    assert main(["recompose", str(tmp_path / "broken.json")]) == EXIT_USAGE


def test_classify(tmp_path, capsys):
    g = _write(tmp_path, "dc.txt", doubled_cycle(6))
    assert main(["classify", g, "--format", "json", "--tw-ceiling", "1"]) == EXIT_OK
    body = _json(capsys)
    assert body["status"] == "ok" and body["warnings"] and not body["violations"]
    k5 = _write(tmp_path, "k5.txt", complete(5))
    assert main(["classify", k5]) == EXIT_OK
    assert "hypothesis-fails" in capsys.readouterr().out


def test_prop_test(tmp_path, capsys):
    args = ["prop-test", "theorem3", "--trials", "10", "--seed", "2", "--dump-dir", str(tmp_path)]
    assert main(args + ["--format", "json"]) == EXIT_OK
    body = _json(capsys)
    assert body["config"]["max_n"] == 8 and body["unknown"] == 0
    assert main(["prop-test", "theorem3", "--max-n", "2"]) == EXIT_USAGE
    assert main(["prop-test", "nope"]) == EXIT_USAGE


def test_witness(capsys):
    assert main(["witness", "--format", "json"]) == EXIT_OK
    assert _json(capsys)["status"] == "found"


def test_malformed_input_is_a_usage_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 1\n0 0\n")
    assert main(["check-w4", str(p)]) == EXIT_USAGE
    assert main(["check-w4", str(tmp_path / "missing.txt")]) == EXIT_USAGE


def test_pipeline_through_stdin():
    exe = [sys.executable, "-m", "w4struct.cli"]
    gen = subprocess.run(exe + ["gen", "complete", "5"], capture_output=True, text=True, check=True)
    res = subprocess.run(exe + ["check-w4", "-"], input=gen.stdout, capture_output=True, text=True)
    assert res.returncode == 0 and "result: yes" in res.stdout
    gen = subprocess.run(exe + ["gen", "doubled-cycle", "6"], capture_output=True, text=True, check=True)
    res = subprocess.run(exe + ["check-w4", "-", "--expect", "no"], input=gen.stdout, capture_output=True, text=True)
    assert res.returncode == 0
