import json
import subprocess
import sys

import pytest

from toricrig.cli import main
from toricrig.corpus import data_path
from toricrig.fan import Fan, hirzebruch


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fan_file(tmp_path):
    def write(f, name="fan.json"):
        p = tmp_path / name
        p.write_text(f.to_json() if isinstance(f, Fan) else f)
        return str(p)

    return write


def test_check_exit_codes(capsys, fan_file):
    assert run(capsys, "check", fan_file(hirzebruch(1)))[0] == 0
    bad = Fan(2, ((1, 0), (1, 2)), ((0, 1),))
    code, out, _ = run(capsys, "check", fan_file(bad))
    assert code == 1 and "smooth: False" in out
    code, _, err = run(capsys, "check", fan_file("{broken"))
    assert code == 2 and "line 1" in err
    assert run(capsys, "check", "/nonexistent/fan.json")[0] == 2


def test_check_json(capsys, fan_file):
    code, out, _ = run(capsys, "--json", "check", fan_file(hirzebruch(0)))
    assert code == 0
    assert json.loads(out) == {"valid": True, "complete": True, "smooth": True, "violations": []}


def test_cohomology_output(capsys):
    code, out, _ = run(capsys, "cohomology", str(data_path("cp2.json")))
    assert code == 0
    assert "presentation: Z[x]/(x^3)" in out
    code, out, _ = run(capsys, "cohomology", "--json", str(data_path("hirzebruch_1.json")))
    d = json.loads(out)
    assert d["presentation"] == "Z[x,y]/(x^2, y^2+xy)"
    assert d["betti"] == [1, 2, 1]


def test_cohomology_rejects_bad_fan(capsys, fan_file):
    bad = Fan(2, ((1, 0), (0, 1)), ((0, 1),))
    assert run(capsys, "cohomology", fan_file(bad))[0] == 1


def test_construct_round_trips(capsys, fan_file):
    code, out, _ = run(capsys, "construct", "hirzebruch", "2")
    assert code == 0 and Fan.from_json(out) == hirzebruch(2)
    code, out2, _ = run(capsys, "construct", "bott", "1,1", "--twists", "[[2]]")
    assert Fan.from_json(out2) == hirzebruch(2)
    code, out3, _ = run(capsys, "construct", "bott", "1,1", "--twists", "[[[2]]]")
    assert out3 == out2
    path = fan_file(out)
    code, out, _ = run(capsys, "construct", "blowup", path, "1")
    assert code == 0 and Fan.from_json(out).nrays == 5
    code, out, _ = run(capsys, "construct", "product", path, str(data_path("cp1.json")))
    assert Fan.from_json(out).dim == 3
    code, out, _ = run(capsys, "construct", "example43", "2")
    assert Fan.from_json(out).nrays == 7


def test_construct_usage_errors(capsys):
    assert run(capsys, "construct", "cpn")[0] == 2
    assert run(capsys, "construct", "cpn", "x")[0] == 2
    assert run(capsys, "construct", "cpn", "0")[0] == 2
    assert run(capsys, "construct", "example43", "7")[0] == 2
    assert run(capsys, "construct", "bott", "1,1", "--twists", "[[")[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "--json", "--bound", "2", "classify", "corpus:hirzebruch_1", "corpus:hirzebruch_-1", "corpus:hirzebruch_0")
    assert code == 0
    d = json.loads(out)
    assert d["search_bound"] == 2
    assert d["ring_iso_classes"] == [["hirzebruch_1", "hirzebruch_-1"], ["hirzebruch_0"]]
    assert run(capsys, "classify", "corpus:nope")[0] == 2


def test_classify_example_4_3_text(capsys):
    code, out, _ = run(capsys, "classify", "example-4-3", "--bound", "1")
    assert code == 0
    assert out.startswith("members: example43_1, example43_2, example43_3")


def test_quasitoric_commands(capsys):
    assert run(capsys, "quasitoric", "check", str(data_path("charfun_cp2.json")))[0] == 0
    assert run(capsys, "quasitoric", "realizable", str(data_path("charfun_hirzebruch_1.json")))[0] == 0
    code, out, _ = run(capsys, "quasitoric", "realizable", str(data_path("charfun_not_toric.json")))
    assert code == 1 and out.strip() == "not toric"
    code, out, _ = run(capsys, "--json", "quasitoric", "enumerate", str(data_path("triangle.json")), "--bound", "1")
    d = json.loads(out)
    assert (d["total_valid"], d["orbits_under_gl"], d["orbits_under_gl_and_aut"]) == (96, 4, 2)
    assert run(capsys, "quasitoric", "enumerate", str(data_path("triangle.json")))[0] == 2


def test_negative_bound(capsys):
    assert run(capsys, "--bound", "-1", "check", str(data_path("cp1.json")))[0] == 2


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "toricrig", "--json", "classify", "example-4-3", "--bound", "1"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["members"] == ["example43_1", "example43_2", "example43_3"]
