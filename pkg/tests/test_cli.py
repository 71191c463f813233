import json
import subprocess
import sys

import pytest

from artifact.cli import main
from artifact.series_ring import MotivicRational

from brute import S11


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="in.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return _write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_s11(write, capsys):
    path = write({"rank": 2, "generators": [list(g) for g in S11]})
    code, out, _ = run(["analyze", path], capsys)
    assert code == 0
    assert "candidate_poles: (0,3), (0,6), (1,1), (1,3), (2,1), (5,12)" in out
    code, out, _ = run(["analyze", path, "--format", "json"], capsys)
    doc = json.loads(out)
    assert sorted(map(tuple, doc["candidate_poles"])) == sorted({(2, 1), (1, 1), (0, 3), (0, 6), (1, 3), (5, 12)})
    assert {"ray": [5, 2], "phi": [7, 12], "psi": [5]} in doc["phi_table"]


def test_series_line(write, capsys):
    path = write({"rank": 1, "generators": [[1]]})
    code, out, _ = run(["series", "--order", "3", path], capsys)
    assert code == 0
    assert out.splitlines() == ["series: (1)/((1 - L*T))", "expansion:", "  1", "  L", "  L^2", "  L^3"]


def test_series_json_roundtrip(write, capsys):
    path = write({"rank": 2, "generators": [list(g) for g in S11]})
    code, out, _ = run(["series", path, "--format", "json", "--order", "4"], capsys)
    doc = json.loads(out)
    r = MotivicRational.from_json(doc["series"])
    assert json.loads(json.dumps(r.to_json())) == doc["series"]
    assert len(doc["expansion"]) == 5


def test_latex_and_volume(write, capsys):
    path = write({"rank": 2, "generators": [[1, 0], [0, 1]]})
    code, out, _ = run(["series", path, "--format", "latex", "--order", "1"], capsys)
    assert code == 0 and r"\mathbb{L}" in out
    code, out, _ = run(["volume", path], capsys)
    assert code == 0 and out.splitlines()[0] == "direct: 1"


def test_check_exit_zero(write, capsys):
    path = write({"rank": 2, "generators": [[2, 1], [1, 3], [4, 0]]})
    code, out, _ = run(["check", "--order", "12", path], capsys)
    assert code == 0 and "ok: True" in out


def test_global_series(write, capsys):
    path = write({"rank": 2, "generators": [[1, 0], [0, 1]]})
    code, out, _ = run(["global-series", path, "--order", "2"], capsys)
    assert code == 0 and out.startswith("series: (L^2)/((1 - L^2*T))")
    path = write({"rank": 1, "generators": [[2], [3]]}, "c.json")
    code, _, err = run(["global-series", path], capsys)
    assert code == 1 and "NotNormal" in err


@pytest.mark.parametrize(
    "text,field",
    [
        ("{not json", "input"),
        ("[1, 2]", "input"),
        ('{"generators": [[1]]}', "rank"),
        ('{"rank": 0, "generators": [[1]]}', "rank"),
        ('{"rank": true, "generators": [[1]]}', "rank"),
        ('{"rank": 2}', "generators"),
        ('{"rank": 2, "generators": []}', "generators"),
        ('{"rank": 2, "generators": [[1, 0], [1]]}', "generators[1]"),
        ('{"rank": 1, "generators": [[1.5]]}', "generators[0]"),
    ],
)
def test_malformed_input(write, capsys, text, field):
    code, _, err = run(["series", write(text)], capsys)
    assert code == 2
    assert err.startswith(f"error: {field}:")


def test_engine_error(write, capsys):
    code, _, err = run(["series", write({"rank": 2, "generators": [[1, 0], [-1, 0]]})], capsys)
    assert code == 1 and "NotStrictlyConvex" in err
    code, _, err = run(["series", write({"rank": 1, "generators": [[0]]})], capsys)
    assert code == 1 and "EmptySemigroup" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(["series", str(tmp_path / "nope.json")], capsys)
    assert code == 2


def test_deterministic_output_and_module_entry(write):
    path = write({"rank": 2, "generators": [list(g) for g in S11]})
    outs = []
    for _ in range(2):
        p = subprocess.run([sys.executable, "-m", "artifact", "series", path, "--format", "json"], capture_output=True)
        assert p.returncode == 0
        outs.append(p.stdout)
    assert outs[0] == outs[1]


def test_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"rank": 1, "generators": [[2], [3]]}'))
    code, out, _ = run(["series", "-", "--order", "3"], capsys)
    assert code == 0 and out.splitlines()[-1] == "  1 - L + L^2"
