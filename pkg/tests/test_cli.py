import json
import os

import numpy as np
import pytest

from kplexer import is_kplex, parse_graph
from kplexer.bench import RunRecord, correlation_summary, pearson, run_manifest
from kplexer.cli import main
from kplexer.solver import SolverConfig


@pytest.fixture()
def k6_file(tmp_path):
    path = tmp_path / "k6.txt"
    lines = [f"{i} {j}" for i in range(1, 7) for j in range(i + 1, 7)]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture()
def tiny_clq(tmp_path):
    path = tmp_path / "c4.clq"
    path.write_text("p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n")
    return str(path)


def test_solve_text_output(k6_file, capsys):
    rc = main(["solve", "--graph", k6_file, "--k", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "omega_k    : 6" in out
    assert "g_k / cg_k : 0 /" in out


def test_solve_json_witness_reverifies(k6_file, capsys):
    rc = main(["solve", "--graph", k6_file, "--k", "2", "--output", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["omega_k"] == 6
    g = parse_graph(k6_file)
    label_to_id = {int(l): i for i, l in enumerate(g.labels)}
    members = [label_to_id[w] for w in payload["witness"]]
    assert is_kplex(g, members, 2)


def test_solve_autodetect_dimacs(tiny_clq, capsys):
    rc = main(["solve", "--graph", tiny_clq, "--k", "2"])
    assert rc == 0
    assert "omega_k    : 4" in capsys.readouterr().out


def test_solve_exit_codes(tmp_path, capsys):
    assert main(["solve", "--graph", str(tmp_path / "missing.txt"), "--k", "2"]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    assert main(["solve", "--graph", str(bad), "--k", "2"]) == 1
    assert main(["solve", "--graph", str(bad), "--k", "0"]) == 1


def test_params_output(tiny_clq, capsys):
    rc = main(["params", "--graph", tiny_clq, "--k", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "n=4 m=4 d=2 cd=0" in out
    assert "k=2: omega_k=4 g_k=0 cg_k=0" in out


def test_params_with_omega_override(tiny_clq, capsys):
    rc = main(["params", "--graph", tiny_clq, "--k", "2", "--omega", "4"])
    assert rc == 0
    assert "omega_k=4 g_k=0 cg_k=0" in capsys.readouterr().out


def test_bench_manifest_and_jobs(tmp_path, k6_file, tiny_clq, capsys):
    tri = tmp_path / "tri.txt"
    tri.write_text("1 2\n2 3\n3 1\n")
    manifest = tmp_path / "manifest.txt"
    manifest.write_text(f"# demo\n{k6_file} 1 2\n{tiny_clq} 2\n{tri} 1\n")
    rc = main(["bench", "--manifest", str(manifest), "--output", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["records"]) == 4
    assert all(r["status"] == "optimal" for r in payload["records"])
    omegas = [r["omega_k"] for r in payload["records"]]
    assert omegas == [6, 6, 4, 3]
    # parallel run yields the same records modulo timings
    seq = run_manifest(str(manifest), SolverConfig(), jobs=1)
    par = run_manifest(str(manifest), SolverConfig(), jobs=2)
    strip = lambda r: {k: v for k, v in json.loads(r.to_json()).items()
                       if k not in ("elapsed_ms",)}
    assert [strip(r) for r in seq] == [strip(r) for r in par]


def test_bench_records_failures_and_continues(tmp_path, k6_file, capsys):
    manifest = tmp_path / "manifest.txt"
    manifest.write_text(f"{k6_file} 1\nnope.txt 2\n")
    rc = main(["bench", "--manifest", str(manifest)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "error" in out and "optimal" in out


def test_runrecord_roundtrip():
    rec = RunRecord(graph="g", n=5, m=4, k=2, strategy="vertex", reductions=True,
                    dbdd_bound=True, status="optimal", omega_k=3, d=2, cd=1,
                    g_k=1, cg_k=2, elapsed_ms=12, dbdd_nodes=7, gamma=1.5)
    assert RunRecord.from_json(rec.to_json()) == rec


def test_pearson_null_on_constant():
    assert pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) is None
    assert pearson([1.0], [2.0]) is None
    assert abs(pearson([1, 2, 3], [2, 4, 6]) - 1.0) < 1e-12


def test_correlation_summary_fields(k6_file):
    recs = run_manifest_from_pairs([(k6_file, 1), (k6_file, 2)])
    summary = correlation_summary(recs)
    assert summary["solved"] == 2
    for f in ("n", "d", "cd", "g_k", "cg_k"):
        assert f"pearson_log_time_vs_{f}" in summary


def run_manifest_from_pairs(pairs):
    from kplexer.bench import run_instance

    return [run_instance(p, k, SolverConfig()) for p, k in pairs]


def test_env_time_limit(monkeypatch, k6_file, capsys):
    monkeypatch.setenv("KPLEXER_TIME_LIMIT", "123")
    from kplexer.cli import _default_limit

    assert _default_limit() == 123.0
