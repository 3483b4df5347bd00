import csv
import io as _io
import subprocess
import sys
from pathlib import Path

import pytest

from tripack import io
from tripack.approx import ratio_bound
from tripack.cli import main
from tripack.core import is_valid_packing

FIX = Path(__file__).parent / "fixtures"


def run(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "tripack.cli", *map(str, args)], input=stdin, capture_output=True, text=True)


def result_line(stderr):
    (line,) = [l for l in stderr.splitlines() if l.startswith("RESULT ")]
    return dict(kv.split("=", 1) for kv in line.split()[1:])


def test_detect_cyc3():
    r = run("detect", "--in", FIX / "cyc3.tour")
    assert r.returncode == 0
    assert io.parse_ltour(r.stdout).m == 1


def test_detect_not_sparse():
    r = run("detect", "--in", FIX / "g6_not_sparse.tour")
    assert r.returncode == 1 and "not sparse" in r.stderr


def test_solve_phi_reports(tmp_path):
    t = tmp_path / "t.ltour"
    assert run("gen", "--n", 20, "--arcs", 6, "--minspan", 5, "--seed", 3, "--out", t).returncode == 0
    r = run("solve", "--in", t, "--algo", "phi", "--c", 5, "--out", tmp_path / "p")
    assert r.returncode == 0
    res = result_line(r.stderr)
    assert {"size", "m0", "m1", "m2"} <= set(res)
    phi_line = [l for l in r.stderr.splitlines() if l.startswith("phi ")][0]
    assert phi_line == f"phi m0={res['m0']} m1={res['m1']} m2={res['m2']} size={res['size']}"
    v = run("verify", "--in", t, "--packing", tmp_path / "p")
    assert v.returncode == 0 and result_line(v.stderr)["valid"] == "1"


@pytest.mark.parametrize("algo", ["exact", "dp", "phi"])
def test_every_printed_packing_verifies(tmp_path, algo):
    t = tmp_path / "t.ltour"
    (t).write_text(run("gen", "--n", 18, "--arcs", 5, "--minspan", 2, "--seed", 9).stdout)
    r = run("solve", "--in", t, "--algo", algo)
    assert r.returncode == 0
    P = io.parse_packing(r.stdout)
    assert is_valid_packing(io.parse_ltour(t.read_text()), P)
    assert run("verify", "--in", t, "--packing", "-", stdin=r.stdout).returncode == 0


def test_verify_rejects_invalid(tmp_path):
    t = tmp_path / "t.ltour"
    t.write_text("ltour 6 2\n3 1\n6 4\n")
    p = tmp_path / "p"
    p.write_text("packing 2\n1 2 3\n3 5 6\n")
    assert run("verify", "--in", t, "--packing", p).returncode == 1


def test_format_and_usage_errors(tmp_path):
    bad = tmp_path / "bad.ltour"
    bad.write_text("ltour 3 1\n1 3\n")
    assert run("solve", "--in", bad, "--algo", "exact").returncode == 2
    assert run("solve", "--in", tmp_path / "missing", "--algo", "exact").returncode == 2
    assert run("solve", "--algo", "exact").returncode == 2
    assert run("frobnicate").returncode == 2
    assert "exit status" in run("--help").stdout


def test_not_sparse_phi_exits_1(tmp_path):
    t = tmp_path / "t.ltour"
    t.write_text("ltour 4 2\n3 1\n4 3\n")
    assert run("solve", "--in", t, "--algo", "phi").returncode == 1


def test_budget_env(tmp_path):
    t = tmp_path / "t.ltour"
    t.write_text(run("gen", "--n", 30, "--arcs", 12, "--minspan", 2, "--seed", 3).stdout)
    import os

    env = dict(os.environ, TRIPACK_BUDGET_NODES="2")
    r = subprocess.run([sys.executable, "-m", "tripack.cli", "solve", "--in", str(t), "--algo", "exact"], capture_output=True, text=True, env=env)
    assert r.returncode == 1 and result_line(r.stderr)["status"] == "budget"
    assert is_valid_packing(io.parse_ltour(t.read_text()), io.parse_packing(r.stdout))


def test_dp_refusal(tmp_path):
    t = tmp_path / "t.ltour"
    t.write_text("ltour 30 1\n30 1\n")
    assert run("solve", "--in", t, "--algo", "dp", "--cap", 5).returncode == 1


def test_kernel_commands(tmp_path):
    t = tmp_path / "t.ltour"
    t.write_text("ltour 5 1\n5 1\n")
    out = tmp_path / "k.ltour"
    r = run("kernel", "--in", t, "--mode", "fas", "--k", 1, "--out", out)
    assert r.returncode == 0
    assert io.parse_ltour(out.read_text()).n == 3
    assert io.parse_remap(Path(str(out) + ".remap").read_text()) == {0: 0, 1: 1, 4: 2}
    t.write_text("ltour 15 5\n3 1\n6 4\n9 7\n12 10\n15 13\n")
    r = run("kernel", "--in", t, "--mode", "sparse", "--k", 1)
    assert r.returncode == 0 and "YES" in r.stderr
    assert len(io.parse_packing(r.stdout)) == 1


def test_gadget_selector_compose(tmp_path):
    r = run("gadget", "--cnf", FIX / "sat2_n2_s0.cnf", "--variant", "max2sat3", "--layout", tmp_path / "lay")
    assert r.returncode == 0
    L = io.parse_ltour(r.stdout)
    F = io.parse_cnf((FIX / "sat2_n2_s0.cnf").read_text())
    assert L.n == 35 * F.num_vars + 5 * F.m
    assert len(io.parse_layout((tmp_path / "lay").read_text())) == L.n
    assert run("gadget", "--cnf", FIX / "sat2_n2_s0.cnf", "--variant", "perfect2sat3").returncode == 2
    assert run("gadget", "--cnf", FIX / "sat2_n2_s0.cnf", "--variant", "perfect2sat3", "--k", 1).returncode == 0
    assert run("gadget", "--cnf", FIX / "sat2_n2_s0.cnf", "--variant", "perfect3sat3").returncode == 2

    sel = tmp_path / "sel.ltour"
    r = run("selector", "--m", 3, "--g", 4, "--out", sel, "--select", 2, "--packing", tmp_path / "sp")
    assert r.returncode == 0 and io.parse_ltour(sel.read_text()).n == 36
    assert run("verify", "--in", sel, "--packing", tmp_path / "sp").returncode == 0

    r = run("compose", "--cnf", FIX / "sat3_n3_s1.cnf", FIX / "sat3_n3_s3.cnf", "--t", 3, "--out", tmp_path / "c")
    assert r.returncode == 0 and result_line(r.stderr)["g"] == "2"


def test_determinism(tmp_path):
    a = run("gen", "--n", 25, "--arcs", 8, "--minspan", 2, "--seed", 42)
    b = run("gen", "--n", 25, "--arcs", 8, "--minspan", 2, "--seed", 42)
    assert a.stdout == b.stdout and a.stdout
    t = tmp_path / "t"
    t.write_text(a.stdout)
    assert run("solve", "--in", t, "--algo", "exact").stdout == run("solve", "--in", t, "--algo", "exact").stdout
    r1 = run("gen", "--kind", "tour", "--n", 7, "--seed", 1)
    assert r1.stdout == run("gen", "--kind", "tour", "--n", 7, "--seed", 1).stdout
    io.parse_tour(r1.stdout)


def test_bench_ratio_csv(tmp_path):
    out = tmp_path / "r.csv"
    r = run("bench", "--suite", "ratio", "--seeds", 30, "--jobs", 2, "--out", out)
    assert r.returncode == 0
    rows = list(csv.DictReader(_io.StringIO(out.read_text())))
    assert list(rows[0]) == ["seed", "n", "c", "opt", "phi", "ratio"]
    assert [int(x["seed"]) for x in rows] == list(range(30))
    for x in rows:
        assert float(x["ratio"]) <= ratio_bound(int(x["c"])) + 1e-9
    serial = run("bench", "--suite", "ratio", "--seeds", 30)
    assert serial.stdout == out.read_text()


def test_main_in_process(capsys):
    assert main(["detect", "--in", str(FIX / "cyc3.tour")]) == 0
    assert capsys.readouterr().out.startswith("ltour 3 1")
