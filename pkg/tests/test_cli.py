import json

import pytest

from lensbound.cli import dumps, run
from lensbound.homology import e8_matrix


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, err = call(capsys, *argv, "--json")
    assert code == 0, err
    doc = json.loads(out)
    # canonical form survives a parse and re-dump unchanged
    assert dumps(doc) + "\n" == out
    return doc


def test_tight_json(capsys):
    doc = as_json(capsys, "tight", "8,3")
    assert doc["count"] == "4" and doc["universally_tight"] == "2"
    assert [s["signs"] for s in doc["structures"]] == ["--", "-+", "+-", "++"]


def test_tight_text(capsys):
    code, out, _ = call(capsys, "tight", "5,1")
    assert code == 0
    assert out.splitlines()[-1] == "L(5,1): 4 tight structures, 2 universally tight"


def test_path_with_bfs(capsys):
    doc = as_json(capsys, "path", "7,4", "--verify-bfs")
    assert doc["path"] == ["-7/4", "-5/3", "-3/2", "-1/1", "0/1"]
    assert doc["bfs_verified"] == "true"


def test_menke(capsys):
    doc = as_json(capsys, "menke", "8,3", "--signs", "+-")
    assert doc["mixed"][0]["candidates"] == ["inf", "-3/1"]
    code, _, err = call(capsys, "menke", "8,3", "--signs", "+")
    assert code == 1 and err.startswith("error: input:")


def test_sum_qhb(capsys):
    doc = as_json(capsys, "sum-qhb", "4", "1")
    assert doc["answer"] == "no"
    assert "3 cannot be written as 2k-1" in doc["derivation"][-1]["text"]
    assert set(doc) == {"answer", "witnesses", "derivation", "bounds"}


def test_decisions(capsys):
    assert as_json(capsys, "lisca", "9,5")["witnesses"][0] == {"m": "3", "h": "2", "q": "5"}
    assert as_json(capsys, "embed-s4", "3,1", "3,2")["answer"] == "yes"
    assert as_json(capsys, "donald", "5,2")["answer"] == "no"
    assert as_json(capsys, "donald", "4,1#4,3", "--allow-even")["answer"] == "yes"
    assert as_json(capsys, "punctured", "6,1")["answer"] == "no"


def test_snf_e8_file(capsys, tmp_path):
    f = tmp_path / "e8.txt"
    f.write_text(e8_matrix().to_text())
    doc = as_json(capsys, "snf", "--matrix", str(f))
    assert doc["invariant_factors"] == [] and doc["det"] in ("1", "-1")
    doc = as_json(capsys, "h1", "--matrix", str(f))
    assert doc["homology_sphere"] == "true"


def test_h1_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("2\n2 1\n1 2\n"))
    code, out, _ = call(capsys, "h1")
    assert code == 0 and "H1 = Z/3" in out


def test_cert(capsys):
    doc = as_json(capsys, "cert", "fs", "--k", "2", "--s", "-1", "--sign", "-1")
    assert doc["status"] == "conjecture" and doc["coefficient"] == "-1/4"
    doc = as_json(capsys, "cert", "stein", "--m", "-3")
    assert doc["conclusion"] == "not_fillable"
    doc = as_json(capsys, "cert", "fickle", "--s", "0", "--sign", "1", "--ambient", "rational")
    assert doc["conclusion"] == "rationally_acyclic"
    doc = as_json(capsys, "cert", "plumbing", "--m1", "1", "--m2", "2", "--sign", "1")
    assert [c["coefficient"] for c in doc["certificates"]] == ["1/2", "1/3"]
    assert as_json(capsys, "cert", "slice", "--m", "1")["homology_check"] == "true"


@pytest.mark.parametrize(
    "argv",
    [
        ["tight", "4,2"],
        ["tight", "banana"],
        ["nosuch"],
        [],
        ["sum-qhb", "6", "3"],
        ["snf", "--matrix", "/nonexistent/file"],
        ["cert", "stein", "--m", "0"],
        ["cert", "fs", "--k", "0", "--s", "1", "--sign", "1"],
        ["sweep", "nope", "--pmax", "10"],
        ["sweep", "lisca", "--pmax", "1"],
        ["path", "1,0"],
    ],
)
def test_invalid_input_exits_1(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 1
    assert err.startswith("error: input: ") and err.count("\n") == 1


def test_invariant_violation_exits_2(capsys, monkeypatch):
    from lensbound import farey

    monkeypatch.setattr(farey, "bfs_minimal_path", lambda lens: [])
    code, _, err = call(capsys, "path", "8,3", "--verify-bfs")
    assert code == 2 and err.startswith("error: invariant: ")


def test_sweep_writes_table_and_figure(capsys, tmp_path):
    doc = as_json(capsys, "sweep", "tight-count", "--pmax", "20", "--jobs", "2", "--out-dir", str(tmp_path))
    assert doc["totals"]["mismatches"] == "0" and doc["counterexamples"] == []
    tsv = (tmp_path / "sweep_tight-count.tsv").read_text().splitlines()
    assert tsv[0].split("\t")[0] == "p" and len(tsv) == 20
    assert (tmp_path / "sweep_tight-count.svg").read_text().lstrip().startswith("<?xml")


def test_sweep_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("LENSBOUND_JOBS", "2")
    a = as_json(capsys, "sweep", "chain-det", "--pmax", "25")
    monkeypatch.setenv("LENSBOUND_JOBS", "1")
    b = as_json(capsys, "sweep", "chain-det", "--pmax", "25")
    a.pop("wall_time_ms"), b.pop("wall_time_ms")
    assert a == b


def test_plot_path(capsys, tmp_path):
    out = tmp_path / "p.svg"
    code, _, err = call(capsys, "plot-path", "11,4", "--out", str(out), "--signs", "+-+")
    assert code == 0, err
    assert "<svg" in out.read_text()
    code, _, _ = call(capsys, "plot-path", "11,4", "--out", str(out), "--signs", "+")
    assert code == 1


def test_menke_exhaustive(capsys):
    doc = as_json(capsys, "menke", "5,1", "--signs", "+--", "--exhaustive")
    assert [m["r2"] for m in doc["mixed"]] == ["-3/1", "-2/1"]
    assert all(m["candidates"] == ["inf"] for m in doc["mixed"])
