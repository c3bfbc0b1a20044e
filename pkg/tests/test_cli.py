import json
import subprocess
import sys


from waringsing import resultants
from waringsing.cli import main


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


CAYLEY = {"degree": 3, "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]}
QUARTIC = {"degree": 4, "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_cayley(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "--input", write(tmp_path, CAYLEY))
    assert code == 0
    rep = json.loads(out)
    assert rep["singular"] and rep["NS"] == 3 and rep["mu_global"] == 3
    assert [p["type"] for p in rep["points"]] == ["A1"] * 3
    assert rep["arrangement"]["label"] == "4L-2"


def test_analyze_quartic_text(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "--input", write(tmp_path, QUARTIC), "--format", "text")
    assert code == 0
    assert "2 point(s), mu = 6" in out and out.count("A3") == 2
    assert "irreducible components: 2" in out


def test_analyze_fermat_and_plane_arrangement(tmp_path, capsys):
    fermat = {"degree": 5, "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    code, out, _ = run(capsys, "analyze", "--input", write(tmp_path, fermat))
    assert code == 0 and json.loads(out)["singular"] is False
    five = {"degree": 3, "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1]]}
    code, out, _ = run(capsys, "analyze", "--input", write(tmp_path, five))
    assert code == 0 and json.loads(out)["arrangement"]["label"] == "5L-2"


def test_output_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, QUARTIC)
    outs = [run(capsys, "analyze", "--input", path, "--seed", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "canonicalize", "--input", write(tmp_path, QUARTIC), "--output", str(target))
    assert code == 0 and out == ""
    obj = json.loads(target.read_text())
    assert obj["k"] == 2 and obj["dual_point"][-1]["re"] == "-1/1"


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "analyze", "--input", write(tmp_path, "{not json"))[0] == 1
    assert run(capsys, "analyze", "--input", write(tmp_path, {"forms": []}))[0] == 1
    assert run(capsys, "analyze", "--input", str(tmp_path / "missing.json"))[0] == 1
    nonessential = {"degree": 3, "forms": [[1, 0, 0], [0, 1, 0], [1, 1, 0]]}
    code, _, err = run(capsys, "analyze", "--input", write(tmp_path, nonessential))
    assert code == 2 and "essential" in err
    assert run(capsys, "resultant", "--d", "9")[0] == 2
    assert run(capsys, "resultant", "--d", "3", "--point", "1,x")[0] == 1
    assert run(capsys, "cayley", "--d", "4")[0] == 2


def test_resultant_outputs(capsys):
    code, out, _ = run(capsys, "resultant", "--d", "4", "--point", "1,1")
    obj = json.loads(out)
    assert code == 0 and obj["NS"] == 2 and obj["common_roots"] == 2 and obj["R2"]["re"] == "0/1"
    code, out, _ = run(capsys, "resultant", "--d", "3", "--format", "text")
    assert code == 0 and out.startswith("R2(a,b) = ")
    code, out, _ = run(capsys, "resultant", "--d", "3", "--k", "3", "--point=-1,-1,-1")
    assert json.loads(out)["NS"] == 3


def test_cayley_presets(capsys):
    code, out, _ = run(capsys, "cayley", "--d", "5")
    rep = json.loads(out)
    assert code == 0 and len(rep["points"]) == 9 and rep["family"] == "cayley"
    code, out, _ = run(capsys, "cayley", "--d", "3", "--n", "4")
    assert code == 0 and len(json.loads(out)["points"]) == 4


def test_batch_command(tmp_path, capsys, caplog):
    grid = {"d": 3, "k": 2, "axes": [{"name": "a", "start": "-1", "stop": "1", "step": "1/2"},
                                    {"name": "b", "start": "1/2", "stop": "1", "step": "1/2"}]}
    code, out, _ = run(capsys, "batch", "--input", write(tmp_path, grid), "--jobs", "2")
    obj = json.loads(out)
    assert code == 0 and obj["summary"]["points"] == 8 and obj["summary"]["clipped"] == 2
    assert "clipped 2 grid points" in caplog.text
    assert run(capsys, "batch", "--input", write(tmp_path, {"d": 3}))[0] == 1


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1", "3", "8", "--format", "text")
    assert code == 0
    assert out.splitlines()[0].startswith("[XFAIL]  1.")
    assert "[PASS]  3." in out and "[PASS]  8." in out


def test_verify_detects_tampering(monkeypatch, capsys):
    real = resultants._data_bytes
    monkeypatch.setattr(resultants, "_data_bytes",
                        lambda name: real(name) + (b" " if name == "delta_d3_r4.json" else b""))
    resultants.load_stored.cache_clear()
    try:
        code, out, _ = run(capsys, "verify", "--only", "3")
        assert code == 3 and "delta_d3_r4.json" in out
    finally:
        monkeypatch.undo()
        resultants.load_stored.cache_clear()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "waringsing.cli", "resultant", "--d", "3", "--point", "1,2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["R2"]["re"] == "68/1"
