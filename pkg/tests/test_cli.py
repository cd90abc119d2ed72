import json
import subprocess
import sys

import pytest

from amn import corpus
from amn.cli import main
from amn.complex import PLMap
from amn.configuration import Configuration
from amn.io import complex_to_json


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def angle_json(m):
    return {"values": [str(v) for v in m.values],
            "windings": [{"edge": list(e), "w": w} for e, w in m.windings]}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_homology_torus_and_point(tmp_path, capsys):
    code, res, _ = run(capsys, "homology", write(tmp_path, "t.json", complex_to_json(corpus.torus7())))
    assert code == 0 and res["betti"] == [1, 2, 1] and res["chi"] == 0
    assert res["manifest"]["command"] == "homology" and res["manifest"]["field"] == "Q"
    code, res, _ = run(capsys, "homology", write(tmp_path, "p.json", complex_to_json(corpus.point())))
    assert res["betti"] == [1]
    code, res, _ = run(capsys, "homology", "--field", "f2",
                       write(tmp_path, "rp2.json", complex_to_json(corpus.rp2())))
    assert res["betti"] == [1, 1, 1]


def test_real_hollow_triangle_with_plot(tmp_path, capsys):
    cx = write(tmp_path, "c.json", complex_to_json(corpus.hollow_triangle()))
    mp = write(tmp_path, "m.json", {"values": [0, 1, 2]})
    svg = tmp_path / "out.svg"
    code, res, _ = run(capsys, "real", cx, mp, "--plot", svg, "--hat-hat")
    assert code == 0
    d0, d1 = res["degrees"]
    assert d0["configuration"]["points"] == [{"x": "0", "y": "2", "mult": 1}]
    assert d1["configuration"]["points"] == [{"x": "2", "y": "0", "mult": 1}]
    # z - 2i
    assert d0["polynomial"] == [["0", "-2"], ["1", "0"]]
    assert len(d0["hat_hat"]) == 1
    text = svg.read_text()
    assert text.startswith("<svg") and "<circle" in text
    assert str(svg) in res["manifest"]["outputs"]


def test_real_constant_map_on_the_diagonal(tmp_path, capsys):
    K = corpus.torus7()
    cx = write(tmp_path, "c.json", complex_to_json(K, PLMap.of([1] * K.vertex_count)))
    code, res, _ = run(capsys, "real", cx, "--degree", "1")
    assert code == 0
    assert res["degrees"][0]["configuration"]["points"] == [{"x": "1", "y": "1", "mult": 2}]


def test_emitted_configuration_round_trips(tmp_path, capsys):
    cx = write(tmp_path, "c.json", complex_to_json(corpus.circle(6), PLMap.of([0, 2, 1, 3, 1, 2])))
    _, res, _ = run(capsys, "real", cx)
    for item in res["degrees"]:
        path = write(tmp_path, f"conf{item['degree']}.json", item["configuration"])
        code, dres, _ = run(capsys, "distance", path, path)
        assert code == 0 and dres["distance_squared"] == "0"
        assert Configuration.from_json(item["configuration"]).cardinality == item["betti"]


def test_angle_circle_and_torus(tmp_path, capsys):
    K, m = corpus.angle_builders()["circle_w1"]
    code, res, _ = run(capsys, "angle", write(tmp_path, "c.json", complex_to_json(K)),
                       write(tmp_path, "a.json", angle_json(m)))
    assert code == 0
    assert res["betti_novikov"] == [0, 0]
    j0 = res["degrees"][0]["jordan_cells"]
    assert j0["snf"] == [{"q": [-1, 1], "k": 1, "lambda": 1}] and j0["agree"]
    assert len(j0["relation"]) == 3
    assert res["degrees"][0]["configuration"]["points"] == []
    assert res["degrees"][0]["stabilization"]["stabilized"]

    K, m = corpus.angle_builders()["torus_projection"]
    code, res, _ = run(capsys, "angle", write(tmp_path, "t.json", complex_to_json(K)),
                       write(tmp_path, "ta.json", angle_json(m)), "--theta", "1/7")
    assert code == 0
    for r in (0, 1):
        cells = res["degrees"][r]["jordan_cells"]
        assert cells["snf"] == [{"q": [-1, 1], "k": 1, "lambda": 1}] and list(cells["relation"]) == ["1/7"]
    assert res["manifest"]["thetas"] == ["1/7"]


def test_angle_not_stabilized_exit_4(tmp_path, capsys):
    K, m = corpus.angle_builders()["wedge_mixed"]
    code, res, _ = run(capsys, "angle", write(tmp_path, "c.json", complex_to_json(K)),
                       write(tmp_path, "a.json", angle_json(m)), "--kmax", "2")
    assert code == 4
    assert not res["degrees"][1]["stabilization"]["stabilized"]


def test_distance_examples(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"space": "plane", "points": [{"x": 0, "y": 0, "mult": 1}]})
    b = write(tmp_path, "b.json", {"space": "plane", "points": [{"x": 3, "y": 4, "mult": 1}]})
    code, res, _ = run(capsys, "distance", a, b)
    assert code == 0 and res["distance_squared"] == "25" and res["distance"] == "5.000000000000"
    s = write(tmp_path, "s.json", {"space": "torus", "points": [{"x": "0.9", "y": "0.2", "mult": 1}]})
    t = write(tmp_path, "t.json", {"space": "torus", "points": [{"x": "-0.1", "y": "-0.8", "mult": 1}]})
    code, res, _ = run(capsys, "distance", s, t)
    assert code == 0 and res["distance_squared"] == "0"


def test_exit_codes(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", "{not json")
    assert run(capsys, "homology", bad)[0] == 2
    assert run(capsys, "homology", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    invalid = write(tmp_path, "inv.json", {"vertices": 2, "simplices": [[0, 5]]})
    assert run(capsys, "homology", invalid)[0] == 3
    cx = write(tmp_path, "c.json", complex_to_json(corpus.edge()))
    assert run(capsys, "real", cx, write(tmp_path, "short.json", {"values": [0]}))[0] == 3
    assert run(capsys, "real", cx, write(tmp_path, "ok.json", {"values": [0, 1]}), "--degree", "4")[0] == 3

    tri = write(tmp_path, "tri.json", complex_to_json(corpus.hollow_triangle()))
    zero = write(tmp_path, "zero.json", {"values": [0, 0, 0], "windings": []})
    code, _, err = run(capsys, "angle", tri, zero)
    assert code == 5 and "DegenerateClass" in err

    p = write(tmp_path, "p.json", {"space": "plane", "points": [{"x": 0, "y": 0, "mult": 1}]})
    t = write(tmp_path, "t.json", {"space": "torus", "points": [{"x": 0, "y": 0, "mult": 1}]})
    e = write(tmp_path, "e.json", {"space": "plane", "points": []})
    assert run(capsys, "distance", p, t)[0] == 6
    assert run(capsys, "distance", p, e)[0] == 6


def test_strict_windings(tmp_path, capsys):
    K, m = corpus.angle_builders()["circle_hex_w1"]
    cx = write(tmp_path, "c.json", complex_to_json(K))
    am = write(tmp_path, "a.json", angle_json(m))
    assert run(capsys, "angle", cx, am)[0] == 0
    assert run(capsys, "angle", cx, am, "--strict-windings")[0] == 3


def test_check_suite_and_out_file(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, res, err = run(capsys, "check", "betti-relation", "--out", out)
    assert code == 0 and res is None
    rep = json.loads(out.read_text())
    assert rep["check"] == "betti-relation" and rep["ok"] and rep["manifest"]["seed"] == 0
    assert "pass" in err


def _cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "amn.cli", *argv], capture_output=True, env=env)


@pytest.mark.parametrize("threads", ["1", "2"])
def test_check_is_byte_deterministic(tmp_path, threads):
    import os
    env = {**os.environ, "AMN_THREADS": threads}
    first = _cli("check", "stability", "--seed", "7", "--cases", "6", env=env)
    second = _cli("check", "stability", "--seed", "7", "--cases", "6", env=env)
    assert first.returncode == 0
    assert first.stdout == second.stdout and first.stdout
