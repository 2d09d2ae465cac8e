import json
import subprocess
import sys

import numpy as np
import pytest

from zerr.cli import cli_dispatch
from zerr.constructions import cabello18
from zerr.graphs import edgeless
from zerr.certificates import read_certificate
from zerr.quantum import dump_vectorset


@pytest.fixture
def c18_files(tmp_path):
    ch, vs = tmp_path / "c18.json", tmp_path / "c18v.json"
    assert cli_dispatch(["generate", "cabello18", "--out-channel", str(ch), "--out-vectors", str(vs)]) == 0
    return ch, vs


def jsonl(text):
    return [json.loads(line) for line in text.strip().splitlines()]


def test_alpha_edgeless(tmp_path, capsys):
    p = tmp_path / "k5.json"
    p.write_text(json.dumps(edgeless(5).to_json()))
    assert cli_dispatch(["alpha", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "5"


def test_alpha_dimacs_and_channel(tmp_path, c18_files, capsys):
    p = tmp_path / "c5.col"
    p.write_text("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    assert cli_dispatch(["alpha", str(p)]) == 0
    assert cli_dispatch(["alpha", str(c18_files[0]), "--witness"]) == 0
    out = capsys.readouterr().out.split("\n")
    assert out[0] == "2" and out[1] == "4" and len(out[2].split()) == 4


def test_clique(c18_files, capsys):
    assert cli_dispatch(["clique", str(c18_files[0])]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_product(tmp_path, capsys):
    g = tmp_path / "g.col"
    g.write_text("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    h = tmp_path / "h.json"
    h.write_text(json.dumps(edgeless(3).to_json()))
    out = tmp_path / "p.json"
    assert cli_dispatch(["product", str(g), str(h), "--out", str(out)]) == 0
    assert cli_dispatch(["alpha", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "6"


def test_perfect(tmp_path, c18_files, capsys):
    g = tmp_path / "c5.col"
    g.write_text("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    b = tmp_path / "p4.col"
    b.write_text("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    assert cli_dispatch(["perfect", str(g)]) == 0
    assert cli_dispatch(["perfect", str(b)]) == 0
    assert cli_dispatch(["perfect", str(c18_files[0])]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("imperfect odd hole:") and lines[1] == "perfect"
    assert lines[2].startswith("imperfect")


def test_verify(c18_files, capsys):
    assert cli_dispatch(["verify", *map(str, c18_files)]) == 0
    rows = jsonl(capsys.readouterr().out)
    assert rows[-1]["summary"] == {"name": "c18", "dim": 4, "achieved": 18, "baseline": 16, "gap": 2, "pairs": 36}
    entries = [r for r in rows if "message" in r]
    assert len(entries) == 36 and all(r["outcome"] == r["vertex"] for r in entries)


def test_verify_corrupted(tmp_path, c18_files, capsys):
    c = cabello18()
    bad = tmp_path / "bad.json"
    dump_vectorset(c.vectors.replace("v3", c.vectors["v3"] + np.array([0, 0, 1e-3, 0])), bad)
    assert cli_dispatch(["verify", str(c18_files[0]), str(bad)]) == 1
    captured = capsys.readouterr()
    assert "FAIL hyperedge_orthogonality" in captured.err
    rows = jsonl(captured.out)
    assert rows[-1]["summary"]["achieved"] is None
    assert sum("failure" in r for r in rows) == 8


def test_simulate(c18_files, tmp_path, capsys):
    out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ["simulate", *map(str, c18_files), "--trials", "300", "--seed", "9"]
    assert cli_dispatch(args + ["--out", str(out1)]) == 0
    assert cli_dispatch(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    summary = jsonl(out1.read_text())[-1]["summary"]
    assert summary["success_fraction"] == 1.0 and summary["trials"] == 300


def test_certify_superadditive(c18_files, tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = cli_dispatch(["certify", str(c18_files[0]), "--vectors", str(c18_files[1]),
                         "--assist-dim", "4", "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out.strip() == "SUPERADDITIVE"
    cert = read_certificate(out)
    assert cert.verdict == "SUPERADDITIVE" and cert.achieved == 18 and cert.baseline == 16


def test_certificate_replays(c18_files, tmp_path, capsys):
    out = tmp_path / "cert.json"
    cli_dispatch(["certify", str(c18_files[0]), "--vectors", str(c18_files[1]), "--assist-dim", "4",
                  "--out", str(out)])
    cert = read_certificate(out)
    capsys.readouterr()
    cli_dispatch(["verify", *map(str, c18_files)])
    summary = jsonl(capsys.readouterr().out)[-1]["summary"]
    cli_dispatch(["baseline", str(c18_files[0]), "--d", str(cert.dim)])
    baseline = int(capsys.readouterr().out)
    assert summary["achieved"] == cert.achieved and baseline == cert.baseline


def test_certify_dimension(c18_files, capsys):
    assert cli_dispatch(["certify", str(c18_files[0]), "--vectors", str(c18_files[1]), "--assist-dim", "2"]) == 0
    assert capsys.readouterr().out.strip() == "NO_GO_DIMENSION"


def test_generate_xu(tmp_path, capsys):
    ch, vs = tmp_path / "x.json", tmp_path / "xv.json"
    assert cli_dispatch(["generate", "xu", "--m", "2", "--out-channel", str(ch), "--out-vectors", str(vs)]) == 0
    assert cli_dispatch(["certify", str(ch), "--vectors", str(vs), "--assist-dim", "3"]) == 0
    assert capsys.readouterr().out.strip().endswith("SUPERADDITIVE")


def test_baseline(c18_files, capsys):
    assert cli_dispatch(["baseline", str(c18_files[0]), "--d", "4"]) == 0
    assert capsys.readouterr().out.strip() == "16"


def test_usage_errors(tmp_path, capsys):
    assert cli_dispatch(["frobnicate"]) == 2
    assert cli_dispatch([]) == 2
    assert cli_dispatch(["alpha", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["a"], "edges": [["a", "b"]]}')
    assert cli_dispatch(["alpha", str(bad)]) == 2
    assert "usage" in capsys.readouterr().err


def test_solver_limit_env(c18_files, monkeypatch, capsys):
    monkeypatch.setenv("ZERR_SOLVER_LIMIT", "10")
    assert cli_dispatch(["alpha", str(c18_files[0])]) == 2
    assert "ZERR_SOLVER_LIMIT" in capsys.readouterr().err


def test_module_entry_point(c18_files):
    res = subprocess.run([sys.executable, "-m", "zerr", "alpha", str(c18_files[0])],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "4"
