import json
import subprocess
import sys

import pytest

from oswap import __version__, cli

from conftest import FIG1_ROWS, FIG1_WORD


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


# -- golden exit codes ---------------------------------------------------------

def test_verify_n4(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "--mode", "exact", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["equal"] is True and rep["components"] == 6
    assert rep["version"] == __version__
    assert rep["config"]["n"] == 4 and rep["config"]["seed"] == 0
    assert rep["wall_time"] >= 0


def test_verify_human_output(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3")
    assert code == 0 and "equal=true" in out


def test_verify_modular(capsys):
    code, out, _ = run(capsys, "verify", "--n", "5", "--mode", "modular", "--seed", "3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["equal"] is True and rep["seed"] == 3


def test_verify_inequality_exits_1(capsys, monkeypatch):
    import oswap.symbolic as symbolic

    def fake(n, mode, seed, checkpoint_dir, **kw):
        return {"n": n, "mode": mode, "components": 1, "equal": False, "witness": {},
                "wall_time": 0.0}

    monkeypatch.setattr(symbolic, "verify_identity", fake)
    code, out, _ = run(capsys, "verify", "--n", "3")
    assert code == 1 and "equal=false" in out


def test_verify_uses_checkpoint_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("OSWAP_CHECKPOINT_DIR", str(tmp_path))
    assert run(capsys, "verify", "--n", "4")[0] == 0
    assert (tmp_path / "F4.json").exists() and (tmp_path / "G4.json").exists()


def test_verify_writes_reduced_components(capsys, tmp_path):
    target = tmp_path / "F4.json"
    code, out, _ = run(capsys, "verify", "--n", "4", "--components", str(target), "--json")
    assert code == 0 and "reduced_components" not in json.loads(out)
    comps = json.loads(target.read_text())["components"]
    assert len(comps) == 6
    assert comps["(1,2,3)"]["numerator"] == "x1 + 2*x2 + 5"
    assert run(capsys, "verify", "--n", "4", "--components", str(target))[0] == 2
    assert run(capsys, "verify", "--n", "4", "--mode", "modular",
               "--components", str(tmp_path / "m.json"))[0] == 2


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "1"],
    ["verify", "--n", "4", "--mode", "fuzzy"],
    ["verify", "--n", "4", "--workers", "0"],
    ["simulate", "--model", "osp", "--n", "1", "--trials", "3"],
    ["simulate", "--model", "tasep", "--n", "3", "--trials", "3"],
    ["compare", "--a", "osp", "--b", "growth", "--n", "3", "--alpha", "1.5"],
    ["compare", "--a", "osp", "--b", "growth", "--n", "3", "--checks", "moments"],
    ["density", "--model", "v", "--n", "3", "--point", "1.0"],
    ["density", "--model", "v", "--n", "6", "--point", "1", "1", "1", "1", "1"],
    ["enumerate", "--what", "syt", "--n", "1"],
    [],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_version_flag(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and __version__ in out


# -- simulate ------------------------------------------------------------------

def test_simulate_is_byte_identical(capsys):
    argv = ["simulate", "--model", "osp", "--n", "3", "--trials", "2", "--seed", "7"]
    code1, first, _ = run(capsys, *argv)
    code2, second, _ = run(capsys, *argv)
    assert code1 == code2 == 0 and first == second
    lines = first.splitlines()
    assert lines[0] == "trial,t1,t2,absorb,trajectory"
    assert len(lines) == 3
    row = lines[1].split(",")
    assert float(row[3]) == max(float(row[1]), float(row[2]))
    assert row[4] in ("1 2 1", "2 1 2")


def test_simulate_workers_do_not_change_output(capsys):
    base = ["simulate", "--model", "growth", "--n", "4", "--trials", "50", "--seed", "2"]
    one = run(capsys, *base)[1]
    two = run(capsys, *base, "--workers", "2")[1]
    assert one == two
    assert one.splitlines()[1].split(",")[-1].count("/") == 2


def test_simulate_dual_has_empty_trajectory(capsys):
    out = run(capsys, "simulate", "--model", "dual", "--n", "3", "--trials", "1")[1]
    assert out.splitlines()[1].endswith(",")


def test_outputs_need_force(capsys, tmp_path):
    target = tmp_path / "out.csv"
    argv = ["simulate", "--model", "osp", "--n", "3", "--trials", "4", "--out", str(target)]
    assert run(capsys, *argv)[0] == 0
    first = target.read_text()
    code, _, err = run(capsys, *argv)
    assert code == 2 and "--force" in err
    assert run(capsys, *argv, "--force", "--seed", "1")[0] == 0
    assert target.read_text() != first


# -- compare and density -------------------------------------------------------

def test_compare_pass_and_report(capsys, tmp_path):
    report = tmp_path / "rep.json"
    code, out, _ = run(capsys, "compare", "--a", "growth", "--b", "dual", "--n", "4",
                       "--trials", "5000", "--seed", "0", "--report", str(report))
    assert code == 0 and out.strip().endswith("verdict: pass")
    rep = json.loads(report.read_text())
    assert rep["verdict"] == "pass" and rep["version"] == __version__
    assert rep["config"]["seed"] == 0 and "wall_time" in rep


def test_compare_failed_verdict_exits_1(capsys):
    # at alpha close to 1 the KS thresholds sit below typical null fluctuations
    code, out, _ = run(capsys, "compare", "--a", "osp", "--b", "osp", "--n", "4",
                       "--trials", "2000", "--alpha", "0.999", "--json")
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_density_value(capsys):
    code, out, _ = run(capsys, "density", "--model", "v", "--n", "3", "--point", "0.7", "0.8")
    assert code == 0 and abs(float(out) - 0.2261988) < 1e-6
    code, out, _ = run(capsys, "density", "--model", "U", "--n", "3", "--point", "0.7", "0.8",
                       "--json")
    assert code == 0 and json.loads(out)["model"] == "U"


# -- correspondences over JSON -------------------------------------------------

def test_rsk_burge_lpp(capsys, tmp_path):
    src = write_json(tmp_path / "x.json", {"shape": [2, 2], "rows": [[1, 2], [3, 4]]})
    code, out, _ = run(capsys, "rsk", src)
    assert code == 0 and json.loads(out) == {"shape": [2, 2], "rows": [[2, 3], [4, 8]]}
    assert json.loads(run(capsys, "burge", src)[1])["rows"] == [[1, 3], [4, 9]]
    lpp = json.loads(run(capsys, "lpp", src)[1])
    assert lpp["L"] == [[1, 3], [4, 8]] and lpp["Lstar"] == [[1, 3], [4, 9]]
    stair = write_json(tmp_path / "s.json", {"shape": [2, 1], "rows": [[0.5, 0.3], [0.2]]})
    lpp = json.loads(run(capsys, "lpp", stair)[1])
    assert lpp["V"] == pytest.approx([0.7, 0.8]) and lpp["W"] == pytest.approx([0.7, 0.8])


def test_eg_roundtrip(capsys, tmp_path):
    t = write_json(tmp_path / "t.json", {"shape": [5, 4, 3, 2, 1], "rows": [list(r) for r in FIG1_ROWS]})
    code, out, _ = run(capsys, "eg", t)
    assert code == 0 and json.loads(out) == {"n": 6, "word": list(FIG1_WORD)}
    s = write_json(tmp_path / "s.json", json.loads(out))
    assert json.loads(run(capsys, "eg-inv", s)[1])["rows"] == [list(r) for r in FIG1_ROWS]


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"n": 3, "word": [2, 1, 2]}'))
    code, out, _ = run(capsys, "eg-inv", "-")
    assert code == 0 and json.loads(out)["rows"] == [[1, 3], [2]]


def test_malformed_json_reports_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"shape": [1],\n "rows": [[1]')
    code, _, err = run(capsys, "rsk", str(bad))
    assert code == 2
    assert "line 2" in err and "column" in err


@pytest.mark.parametrize("verb, obj", [
    ("eg", {"shape": [2, 1], "rows": [[1, 3], [3]]}),
    ("eg", {"shape": [2], "rows": [[1, 2]]}),
    ("eg-inv", {"n": 3, "word": [1, 1, 2]}),
    ("rsk", {"shape": [3], "rows": [[1, 2]]}),
    ("lpp", {"shape": [1], "rows": [[-1]]}),
])
def test_invalid_objects_exit_2(capsys, tmp_path, verb, obj):
    assert run(capsys, verb, write_json(tmp_path / "o.json", obj))[0] == 2


def test_missing_file_exits_2(capsys, tmp_path):
    assert run(capsys, "rsk", str(tmp_path / "nope.json"))[0] == 2


# -- enumerate -----------------------------------------------------------------

def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--what", "syt", "--n", "4", "--count-only")
    assert code == 0 and out.strip() == "16"
    code, out, _ = run(capsys, "enumerate", "--what", "sn", "--n", "3")
    words = sorted(json.loads(line)["word"] for line in out.splitlines())
    assert code == 0 and words == [[1, 2, 1], [2, 1, 2]]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oswap", "enumerate", "--what", "sn",
                           "--n", "5", "--count-only"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "768"
