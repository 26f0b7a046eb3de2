import json
import subprocess
import sys

import pytest

from focaljet import serialize as S
from focaljet.affine import permutation_example
from focaljet.cli import main, run
from focaljet.jet import PlaneJet, VPlusJet, Z, Zbar, group_compose
from polyfix import two_node_reps, unit_square_rep


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(S.dumps(obj))
    return str(p)


def _run(argv):
    status, report, _ = run(argv)
    return status, json.loads(S.dumps(report))


@pytest.fixture
def example1(tmp_path):
    l, lp, G = permutation_example(3, N=4)
    return (_write(tmp_path, "a.json", S.label_to_json(l)),
            _write(tmp_path, "b.json", S.label_to_json(lp)),
            _write(tmp_path, "id.json", S.map_to_json(G)))


def test_equivalent_example1(example1):
    a, b, g = example1
    status, rep = _run(["equivalent", "--l", a, "--lp", b, "--g", g, "--order", "4"])
    assert status == 0 and rep["verdict"] is True and rep["order"] == 4
    status, rep = _run(["equivalent", "--l", a, "--lp", b, "--g", g, "--order", "4",
                        "--no-rotations"])
    assert status == 1 and rep["verdict"] is False


def test_lift_zbar_square(tmp_path):
    g = _write(tmp_path, "g.json", S.map_to_json(PlaneJet(Z(4) + Zbar(4) ** 2)))
    status, rep = _run(["lift", "--g", g, "--order", "4"])
    assert status == 1
    assert rep["liftable"] is False and rep["failing_coeffs"] == [[0, 2]]


def test_validate_and_act(tmp_path, example1):
    a = example1[0]
    assert _run(["validate-label", "--l", a])[0] == 0
    status, rep = _run(["act", "--l", a, "--action", "zm", "--sigma", "2,0,1"])
    assert status == 0 and rep["label"]["m"] == 3
    status, rep = _run(["act", "--l", a, "--action", "zr", "--k", "1", "--b", "1/2"])
    assert status == 0
    status, rep = _run(["act", "--l", a, "--action", "zm", "--sigma", "0,0,1"])
    assert status == 2 and rep["error"]["code"] == "schema_violation"


def test_generate_label(tmp_path):
    gen = {"m": 2, "chain": [{"order": 3, "expr": "Y + X*Y"}],
            "seed": {"order": 3, "expr": "pi + Y**2"}}
    status, rep = _run(["generate-label", "--input", _write(tmp_path, "s.json", gen)])
    assert status == 0 and rep["label"]["m"] == 2
    back = S.label_from_json(rep["label"])
    assert back.order == 3


def test_examples_and_synthesis(tmp_path):
    status, rep = _run(["example", "--kind", "concrete", "--a", "1", "--b", "1",
                        "--order", "3"])
    assert status == 2 and rep["error"]["code"] == "precondition_failure"
    status, rep = _run(["example", "--kind", "concrete", "--a", "1 i", "--b", "1 i",
                        "--order", "3"])
    assert status == 0
    ts0 = S.jet_from_json(rep["lp"]["ts"][0])
    assert ts0 == S.jet_from_json({"order": 3, "expr": "-X**2*Y - Y**3"})
    l = _write(tmp_path, "l.json", rep["l"])
    g = _write(tmp_path, "g.json", rep["G"])
    G0 = S.map_from_json(rep["G"])
    lp = S.label_from_json(rep["lp"])
    # G'_j = (X, g'_{0j}) o G'_0
    targets = [S.map_to_json(group_compose(M, G0)) for M in lp.tuple_maps()]
    t = _write(tmp_path, "t.json", targets)
    status, rep2 = _run(["synthesize", "--l", l, "--targets", t, "--g", g])
    assert status == 0 and rep2["label"] == rep["lp"]


def test_admissible(tmp_path):
    G = VPlusJet.from_coeffs(4, {(0, 1): 1, (1, 1): 1})
    I = VPlusJet.identity(4)
    t = _write(tmp_path, "t.json", [S.map_to_json(I), S.map_to_json(G)])
    tp = _write(tmp_path, "tp.json", [S.map_to_json(G), S.map_to_json(I)])
    assert _run(["admissible", "--t", t, "--tp", tp])[0] == 0
    tq = _write(tmp_path, "tq.json", [S.map_to_json(G), S.map_to_json(G)])
    assert _run(["admissible", "--t", t, "--tp", tq])[0] == 1


def test_polygon_verbs(tmp_path):
    assert _run(["classify-corner", "--xi1", "1,0", "--xi2", "0,1"])[1]["categories"] == \
        ["delzant", "hidden"]
    status, rep = _run(["classify-corner", "--xi1", "2,0", "--xi2", "0,1"])
    assert status == 2
    r = _write(tmp_path, "r.json", S.rep_to_json(unit_square_rep()))
    assert _run(["validate-rep", "--rep", r])[0] == 0
    from focaljet.polygon import zr_action_rep
    r2 = _write(tmp_path, "r2.json", S.rep_to_json(zr_action_rep(unit_square_rep(), 2, 1)))
    status, rep = _run(["orbit-equal", "--rep", r, "--rep2", r2])
    assert status == 0 and rep["witness"] == {"k": 2, "b": "1/1"}
    a, b, Gs = two_node_reps(4)
    ra, rb = (_write(tmp_path, n, S.rep_to_json(x)) for n, x in (("a", a), ("b", b)))
    g = _write(tmp_path, "gs.json", [S.map_to_json(M) for M in Gs])
    assert _run(["rep-equivalent", "--rep", ra, "--rep2", rb, "--g", g])[0] == 0


def test_error_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{bad")
    assert _run(["mu", "--g", str(bad)])[1]["error"]["code"] == "malformed_json"
    assert _run(["mu", "--g", str(tmp_path / "missing.json")])[1]["error"]["code"] == "io_error"
    g = _write(tmp_path, "g.json", {"order": 2, "g": {"order": 2, "expr": "-Y"}})
    assert _run(["mu", "--g", g])[1]["error"]["code"] == "schema_violation"


def test_order_from_environment(tmp_path, monkeypatch):
    g = _write(tmp_path, "g.json", S.map_to_json(VPlusJet.from_coeffs(5, {(0, 1): 1, (3, 0): 1})))
    monkeypatch.setenv("FOCALJET_ORDER", "2")
    status, rep = _run(["mu", "--g", g])
    assert status == 0 and rep["order"] == 2
    assert _run(["mu", "--g", g, "--order", "4"])[1]["order"] == 4


def test_entry_point_is_deterministic(tmp_path, example1):
    a, b, g = example1
    out = tmp_path / "out.json"
    cmd = [sys.executable, "-m", "focaljet", "equivalent", "--l", a, "--lp", b, "--g", g]
    p1 = subprocess.run(cmd, capture_output=True, text=True)
    p2 = subprocess.run(cmd + ["--output", str(out)], capture_output=True, text=True)
    assert p1.returncode == 0 and p2.returncode == 0
    assert p1.stdout == out.read_text()
    assert main(["classify-corner", "--xi1", "1,0", "--xi2", "1,2", "--output",
                 str(tmp_path / "c.json")]) == 1
