import io
import json
import subprocess
import sys

import pytest

from zfc.cli import run

LOOPED = {"n": 3, "kind": "loop-directed", "edges": [[1, 1], [2, 1], [1, 2], [1, 3], [2, 3]]}
LOOPFREE = {"n": 3, "kind": "simple-directed", "edges": [[2, 1], [1, 2], [1, 3], [2, 3]]}
UNDAMPED = {"n": 3, "kind": "loop-directed", "edges": [[2, 1], [1, 2], [1, 3], [2, 3]]}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, doc in (("looped", LOOPED), ("loopfree", LOOPFREE), ("undamped", UNDAMPED)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    p = tmp_path / "undamped_x.txt"
    p.write_text("**0\n**0\n***\n")
    paths["undamped_x"] = str(p)
    p = tmp_path / "path.json"
    p.write_text(json.dumps({"n": 3, "kind": "simple-directed", "edges": [[1, 2], [2, 1], [2, 3], [3, 2]]}))
    paths["path"] = str(p)
    return paths


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if text.startswith("{") else text)


def test_ctrl_strong_both(files):
    code, doc = call("ctrl", "strong", "--graph", files["looped"], "--input", "1", "--method", "both")
    assert code == 0 and doc["verdict"] is True
    assert doc["zf"]["verdict"] and doc["matching"]["verdict"]


def test_match_max_self_less(files):
    code, doc = call("match", "max", "--pattern", files["undamped_x"], "--self-less")
    assert code == 0 and doc["size"] == 1


def test_zf_check_simple(files):
    code, doc = call("zf", "check", "--graph", files["loopfree"], "--set", "1")
    assert code == 0 and doc["zero_forcing"] is False


def test_ctrl_strong_simple_kind(files):
    code, doc = call("ctrl", "strong", "--graph", files["loopfree"], "--input", "1")
    assert code == 0 and doc["verdict"] is False and doc["method"] == "simple"


def test_other_subcommands(files):
    assert call("zf", "propagate", "--graph", files["looped"], "--set", "1")[1]["forces"] == [[2, 3], [1, 2]]
    assert call("zf", "number", "--graph", files["looped"])[1] == {"Z": 1, "witness": [1]}
    assert call("zf", "tree", "--graph", files["path"])[1] == {"Z": 1, "witness": [1]}
    assert call("mr-tree", "--graph", files["path"])[1] == {"min_rank": 2}
    assert call("tri", "--graph", files["looped"])[1] == {"triangle_number": 2}
    assert call("ctrl", "min-input", "--graph", files["looped"])[1]["size"] == 1
    code, doc = call("ctrl", "min-input", "--graph", files["undamped"], "--selfless-gap")
    assert doc["size"] == 1 and doc["selfless_matching"]["size"] == 2 and doc["selfless_matching"]["gap"] == 1
    code, doc = call("ctrl", "kalman", "--graph", files["looped"], "--input", "1", "--samples", "20")
    assert code == 0 and doc["controllable"] == 20 and doc["seed"] == 7


def test_match_check(files, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"edges": [[2, 1], [3, 2]], "constrained": True}))
    code, doc = call("match", "check", "--graph", files["undamped"], "--matching", str(m))
    assert code == 0 and doc["constrained"] and doc["certificate"] == [[3, 2], [2, 1]]
    m.write_text(json.dumps({"edges": [[1, 2], [2, 1]], "constrained": False}))
    code, doc = call("match", "check", "--pattern", files["undamped_x"], "--matching", str(m))
    assert code == 0 and doc["constrained"] is False


def test_text_format(files):
    code, text = call("ctrl", "strong", "--graph", files["looped"], "--input", "1", "--format", "text")
    assert code == 0 and "2 -> 3, 1 -> 2" in text


def test_input_errors(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert call("zf", "check", "--graph", str(bad), "--set", "1")[0] == 2
    assert call("zf", "check", "--graph", str(tmp_path / "missing.json"))[0] == 2
    assert call("zf", "check", "--graph", files["looped"], "--set", "1,x")[0] == 2
    assert call("zf", "check", "--graph", files["looped"], "--set", "9")[0] == 2
    assert call("ctrl", "kalman", "--graph", files["looped"])[0] == 2
    assert call("zf", "tree", "--graph", files["looped"])[0] == 2
    assert call("bogus")[0] == 2


def test_disagreement_exit_code(files, monkeypatch):
    import zfc.controllability as ctl

    real = ctl.strong_matching
    monkeypatch.setattr(ctl, "strong_matching", lambda spec: real(spec).__class__(False, "matching"))
    code, _ = call("ctrl", "strong", "--graph", files["looped"], "--input", "1", "--method", "both")
    assert code == 3


def test_stdin(files, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(LOOPED)))
    assert call("zf", "check", "--graph", "-", "--set", "1")[1]["zero_forcing"] is True


def test_json_output_is_deterministic(files):
    argv = ["ctrl", "kalman", "--graph", files["loopfree"], "--input", "1", "--samples", "30", "--seed", "5"]
    outs = set()
    for _ in range(3):
        buf = io.StringIO()
        run(argv, buf)
        outs.add(buf.getvalue())
    assert len(outs) == 1


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "zfc", "zf", "check", "--graph", files["looped"], "--set", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["zero_forcing"] is True
