import json
import os
import subprocess
import sys

import pytest

from vdec.cli import main
from vdec.verifier import parse_coloring


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([sys.executable, "-m", "vdec.cli", *args], capture_output=True, text=True, env=e)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return {
        "p5": write("p5.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n"),
        "p6": write("p6.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n"),
        "k13": write("k13.txt", "4 3\n0 1\n0 2\n0 3\n"),
        "s33": write("s33.txt", "6 5\n0 1\n0 2\n0 3\n1 4\n1 5\n"),
        "k2": write("k2.txt", "2 1\n0 1\n"),
        "bad": write("bad.txt", "3 2\n0 1\n"),
        "tri": write("tri.txt", "6 6\n0 1\n1 2\n0 2\n0 3\n1 4\n2 5\n"),
        "dir": tmp_path,
    }


def _kv(line):
    return dict(tok.split("=", 1) for tok in line.split())


def test_color_p5(files, tmp_path):
    out = tmp_path / "p5.col"
    trace = tmp_path / "t.jsonl"
    dot = tmp_path / "p5.dot"
    r = run("color", files["p5"], "--out", str(out), "--trace", str(trace), "--dot", str(dot))
    assert r.returncode == 0
    kv = _kv(r.stdout.splitlines()[0])
    assert kv["chi"] == "4" and kv["regime"] == "PathP5"
    c = parse_coloring(out.read_text())
    assert c.color_count == 4 and sorted(set(c.assignment.values())) == [1, 2, 3, 4]
    assert "--" in dot.read_text()
    v = run("verify", files["p5"], str(out))
    assert v.returncode == 0 and _kv(v.stdout)["vdec"] == "true"


def test_color_k13_and_p6(files):
    r = run("color", files["k13"])
    assert r.returncode == 0 and _kv(r.stdout.splitlines()[0])["regime"] == "Star"
    assert _kv(r.stdout.splitlines()[0])["chi"] == "3"
    assert run("color", files["p6"]).returncode == 2


def test_color_equitable(files):
    r = run("color", files["s33"], "--equitable")
    assert r.returncode == 0 and "equitable=true" in r.stdout


def test_exact(files, tmp_path):
    r = run("exact", files["p5"])
    assert r.returncode == 0 and r.stdout.startswith("chi_s=4")
    w = tmp_path / "w.col"
    r = run("exact", files["s33"], "--equitable", "--out", str(w))
    assert r.returncode == 0 and _kv(r.stdout)["chi_es"] == "5"
    assert run("verify", files["s33"], str(w), "--equitable").returncode == 0
    assert run("exact", files["k2"]).returncode == 6
    assert run("exact", files["p6"], "--budget", "3").returncode == 5
    assert run("exact", files["p6"], env={"VDEC_BUDGET": "3"}).returncode == 5


def test_parse_errors_and_usage(files):
    assert run("color", files["bad"]).returncode == 3
    assert run("color", str(files["dir"] / "missing.txt")).returncode == 64
    assert run("exact", files["p5"], env={"VDEC_BUDGET": "lots"}).returncode == 64


def test_verify_failure(files, tmp_path):
    col = tmp_path / "c.col"
    col.write_text("palette 2\n0 1 1\n1 2 2\n2 3 1\n3 4 2\n")
    r = run("verify", files["p5"], str(col), "--explain")
    assert r.returncode == 1 and _kv(r.stdout)["violation"] == "duplicate_set"


def test_classify(files):
    r = run("classify", files["p5"])
    kv = _kv(r.stdout)
    assert kv["shape"] == "DiamFour" and kv["m"] == "2" and kv["chi_predicted"] == "4"


def test_build_shape_round_trip(files, tmp_path):
    out = tmp_path / "q.txt"
    assert run("build-shape", "diam4", "1", "2", "--out", str(out)).returncode == 0
    kv = _kv(run("classify", str(out)).stdout)
    assert (kv["r"], kv["m"], kv["regime"]) == ("1", "2", "ExceptionalU")
    assert run("build-shape", "diam4", "0", "1", "1").returncode == 3


def test_bound(files, tmp_path):
    js = tmp_path / "b.json"
    r = run("bound", files["tri"], "--json", str(js), "--lift")
    assert r.returncode == 0
    kv = _kv(r.stdout)
    assert kv["cor1_bound"] == "5"
    doc = json.loads(js.read_text())
    assert doc["cor2_bound"] == doc["tree_chi"] + doc["cotree_colors"]
    assert "lift" in doc
    r = run("bound", files["tri"], "--all-spanning-trees")
    assert r.returncode == 0


def test_survey(tmp_path):
    out = tmp_path / "s.csv"
    r = run("survey", "--n-min", "3", "--n-max", "6", "--out", str(out))
    assert r.returncode == 0 and _kv(r.stdout)["rows"] == "12"
    assert len(out.read_text().splitlines()) == 13
    before = out.read_text()
    r = run("survey", "--n-min", "3", "--n-max", "6", "--out", str(out), "--resume")
    assert r.returncode == 0 and _kv(r.stdout)["new"] == "0" and out.read_text() == before
    assert run("survey", "--n-max", "20", "--out", str(out)).returncode == 64


def test_survey_resume_partial(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["survey", "--n-min", "3", "--n-max", "7", "--out", str(out)]) == 0
    lines_full = out.read_text().splitlines()
    out.write_text("\n".join(lines_full[:9]) + "\n")
    assert main(["survey", "--n-min", "3", "--n-max", "7", "--out", str(out), "--resume"]) == 0
    assert out.read_text().splitlines() == lines_full


def test_survey_violation_exit(tmp_path):
    out = tmp_path / "s.csv"
    out.write_text("canonical_id,p,q,n1,n2,D,k_lower,chi_exact,chi_predicted,chi_es_exact,flags\n"
                   "fake,5,4,2,3,4,3,7,4,,HypothesisOutside\n")
    code = main(["survey", "--n-min", "3", "--n-max", "4", "--out", str(out), "--resume"])
    assert code == 7
    dump = (tmp_path / "s.csv.violations.jsonl").read_text().splitlines()
    assert json.loads(dump[0])["canonical_id"] == "fake"
