"""Command-line surface: exit codes, JSON shape, determinism."""

import json
import os

import pytest

from sphq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_fixture(capsys):
    code, out, _ = run(capsys, "build", "cb2")
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 5
    assert data["gldim"] == 2


def test_build_file(tmp_path, capsys):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps({
        "quiver": {"vertices": ["1", "2"],
                   "arrows": [{"id": "a", "from": "1", "to": "2"}]},
        "relations": [],
    }))
    code, out, _ = run(capsys, "build", str(path))
    assert code == 0
    assert json.loads(out)["dim"] == 3


def test_cap_insufficient_is_input_error(tmp_path, capsys):
    path = tmp_path / "cyc.json"
    path.write_text(json.dumps({
        "quiver": {"vertices": ["1", "2"],
                   "arrows": [{"id": "a", "from": "1", "to": "2"},
                              {"id": "b", "from": "2", "to": "1"}]},
        "relations": [],
        "length_cap": 1,
    }))
    code, out, err = run(capsys, "build", str(path))
    assert code == 2
    assert json.loads(err)["error"]["code"] == "input"


def test_unknown_vertex_is_input_error(capsys):
    code, _, err = run(capsys, "spherelike", "cb2", "--object", "S:9")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "input"


def test_d_zero_is_computation_error(capsys):
    code, _, err = run(capsys, "asphericality", "cb2",
                       "--object", "interval:2,3")
    assert code == 3
    assert json.loads(err)["error"]["code"] == "computation"


def test_spherelike_report(capsys):
    code, out, _ = run(capsys, "spherelike", "cb3", "--object", "S:1")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "d_spherical"
    assert data["d"] == 3


def test_hom_profile(capsys):
    code, out, _ = run(capsys, "hom", "cb3", "--from", "S:1", "--to", "S:1")
    assert code == 0
    assert json.loads(out)["profile"] == {"0": 1, "3": 1}


def test_euler_ncc(capsys):
    code, out, _ = run(capsys, "euler", "ncc")
    assert code == 0
    assert json.loads(out)["matrix"] == [[1, -2, 2], [0, 1, -2], [0, 0, 1]]


def test_scan_deterministic(capsys):
    code1, out1, _ = run(capsys, "scan", "cb3", "--set", "intervals")
    code2, out2, _ = run(capsys, "scan", "cb3", "--set", "intervals")
    assert code1 == code2 == 0
    assert out1 == out2


def test_family_and_member_pipeline(tmp_path, capsys):
    alg_path = tmp_path / "c75.json"
    emb_path = tmp_path / "emb.json"
    code, _, _ = run(capsys, "family", "circular:7,5",
                     "--out", str(alg_path), "--emb-out", str(emb_path))
    assert code == 0

    q_path = tmp_path / "q.json"
    desc = "induced:%s:S:1" % emb_path
    code, out, _ = run(capsys, "asphericality", str(alg_path),
                       "--object", desc, "--out", str(q_path))
    assert code == 0
    assert json.loads(out)["acyclic"] is False

    code, out, _ = run(capsys, "member", str(alg_path),
                       "--object", "S:1", "--q", str(q_path))
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run(capsys, "member", str(alg_path),
                       "--object", "S:4", "--q", str(q_path))
    assert code == 0 and json.loads(out)["member"] is False


def test_poset_dot_output(tmp_path, capsys):
    dot = tmp_path / "h.dot"
    code, out, _ = run(capsys, "poset", "family:dda:2,3,0",
                       "--verify", "--dot", str(dot))
    assert code == 0
    data = json.loads(out)
    assert data["stats"] == {"cardinality": 3, "height": 2, "width": 2}
    assert data["verified"]["passed"] == data["verified"]["checked"]
    assert dot.read_text().startswith("digraph hasse {")


def test_poset_synth_file(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"elements": ["1", "2"], "less": [["1", "2"]]}))
    code, out, _ = run(capsys, "poset", "synth:%s" % p, "--verify")
    assert code == 0
    assert json.loads(out)["stats"]["cardinality"] == 2


def test_insert_command(capsys):
    code, out, _ = run(capsys, "insert", "cb2", "--vertex", "1", "--n", "1")
    assert code == 0
    data = json.loads(out)
    assert len(data["quiver"]["vertices"]) == 3


def test_bad_family_is_input_error(capsys):
    code, _, err = run(capsys, "family", "nope:1")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "input"
