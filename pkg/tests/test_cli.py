import json
import os

import pytest

from fanih.cli import main

FANS = os.path.join(os.path.dirname(__file__), "..", "fans")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute(capsys):
    code, out, _ = run(capsys, "compute", os.path.join(FANS, "cube-face-fan.json"),
                       "--relative", "--h-vector", "--g-vector")
    assert code == 0
    assert "1 + 5t^2 + 5t^4 + t^6" in out
    assert "g = (1, 4)" in out


def test_compute_json(capsys):
    code, out, _ = run(capsys, "--json", "compute", "example:square", "--h-vector")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["P"]["coeffs"] == [1, 2, 1]
    assert rep["result"]["h_vector"] == [1, 2, 1]
    assert rep["command"][:2] == ["fanih", "--json"]


def test_compute_refuses(capsys):
    code, out, _ = run(capsys, "compute", "example:bad-boundary", "--strict")
    assert code == 1 and "error" in out


@pytest.mark.parametrize("name", ["square", "cone-over-square", "half-plane", "simplex-3"])
def test_verify_passes(capsys, name):
    code, out, _ = run(capsys, "verify", f"example:{name}", "--strict")
    assert code == 0, out
    assert "verdict: PASS" in out


def test_verify_bad_boundary(capsys):
    code, out, _ = run(capsys, "verify", os.path.join(FANS, "bad-boundary.json"), "--json", "--strict")
    rep = json.loads(out)
    assert code == 1
    assert rep["result"]["quasi_convex"] == "No_oracle"
    assert rep["result"]["theorem_coherent"] is True
    code, _, _ = run(capsys, "verify", os.path.join(FANS, "bad-boundary.json"))
    assert code == 0


def test_lefschetz(capsys):
    code, out, _ = run(capsys, "lefschetz", "example:cone-over-square", "--json")
    rep = json.loads(out)["result"]
    assert code == 0 and rep["residue_dims"] == [1, 2, 1] and rep["passed"]


def test_lefschetz_bad_cone(capsys):
    code, _, err = run(capsys, "lefschetz", "example:square", "--cone", "0")
    assert code == 2 and "cone" in err


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "example:cone-over-square")
    assert code == 0 and "simple(cone 0" in out and "True" in out


def test_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "examples")
    assert "cube-face-fan" in out.split()
    code, out, _ = run(capsys, "examples", "square")
    assert json.loads(out)["name"] == "square"
    code, out, _ = run(capsys, "examples", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "random-3d.json").exists()
    code, _, _ = run(capsys, "examples", "nope")
    assert code == 2


def test_seed_changes_random_example(capsys):
    _, a, _ = run(capsys, "examples", "random-3d", "--seed", "1")
    _, b, _ = run(capsys, "examples", "random-3d", "--seed", "2")
    assert a != b


def test_usage_errors(capsys):
    assert run(capsys, "compute", "/nonexistent.json")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "verify", "example:square", "--degree-bound", "2")[0] == 2


def test_schema_error_exit(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"ambient_dim": 2, "rays": [[1, 0], [-1, 0]], "cones": [[0, 1]]}')
    code, _, err = run(capsys, "compute", str(p))
    assert code == 2 and "cones[0]" in err
