from __future__ import annotations

import io
import json

import pytest

from charnum.builtin import bundled_path
from charnum.cli import main
from charnum.verify import SUITES


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_eval_twisted_signature():
    assert run("eval", "--manifold", "M1", "--genus", "sig", "--twist", "L^2") == (0, "98623488\n")


def test_eval_ahat_and_builtin_names():
    assert run("eval", "--manifold", "M3", "--genus", "ahat", "--twist", "L^2") == (0, "-1\n")
    assert run("eval", "--manifold", "OP2", "--genus", "sig") == (0, "1\n")
    assert run("eval", "--manifold", "M0_8", "--genus", "sig") == (0, "224\n")
    assert run("eval", "--manifold", "N8", "--genus", "sig") == (0, "8\n")
    code, out = run("eval", "--manifold", "M4", "--genus", "ahat", "--twist", "T")
    assert (code, out) == (0, "0\n")


def test_eval_rational_output(tmp_path):
    assert run("eval", "--manifold", "M0_8", "--genus", "ahat") == (0, "-1\n")
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"kind": "pontryagin_numbers", "dim": 8, "numbers": {"2": "1"}}))
    assert run("eval", "--manifold", str(f), "--genus", "ahat") == (0, "-1/1440\n")
    assert run("eval", "--manifold", str(f), "--genus", "sig") == (0, "7/45\n")


def test_eval_witten():
    code, out = run("eval", "--manifold", "M2", "--genus", "witten", "--order", "3")
    assert code == 0
    assert out.splitlines() == ["q^0\t1", "q^1\t-24", "q^2\t197136", "q^3\t16767072"]
    assert run("eval", "--manifold", "M2", "--genus", "witten", "--order", "3", "--direct")[1] == out


def test_eval_file_path():
    path = str(bundled_path("M1"))
    assert run("eval", "--manifold", path, "--genus", "sig") == (0, str(2 ** 11 * 3 * 61) + "\n")


def test_bad_manifest_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "ring_model", "dim": 8}', encoding="utf-8")
    assert run("eval", "--manifold", str(bad), "--genus", "sig")[0] == 2
    assert run("decompose", "--manifold", str(tmp_path / "nope.json"))[0] == 2
    assert run("eval", "--manifold", "M1", "--genus", "sig", "--twist", "Q^2")[0] == 2


def test_non_string_decompose_exits_2(tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"kind": "pontryagin_numbers", "dim": 24, "numbers": {"1,1,1,1,1,1": "1"}}))
    assert run("decompose", "--manifold", str(f))[0] == 2


def test_unknown_flags_rejected():
    assert run("eval", "--manifold", "M1", "--genus", "sig", "--bogus")[0] == 2
    assert run("frobnicate")[0] == 2


def test_decompose():
    code, out = run("decompose", "--manifold", "M4")
    assert code == 0
    assert out.splitlines() == ["x\t0\t0\t0\t1", "kappa\t0\t0\t0\t1", "in lattice"]


def test_decompose_non_lattice(tmp_path):
    f = tmp_path / "half.json"
    f.write_text(json.dumps({"kind": "pontryagin_numbers", "dim": 24,
                             "numbers": {"2,2,2": "1944", "3,3": "100", "4,2": "1434", "6": "979"}}))
    code, out = run("decompose", "--manifold", str(f))
    assert code == 0
    assert out.splitlines()[0] == "x\t0\t0\t0\t1/2"
    assert out.splitlines()[-1] == "not in the integral lattice"


def test_sweep_tsv_and_json():
    code, out = run("sweep", "--max", "5", "--mod", "24")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["i", "j", "k", "rank", "ahat", "ahat_mod", "sig", "sig_mod"]
    rows = [line.split("\t") for line in lines[1:] if not line.startswith("#")]
    assert len(rows) == 56
    assert all(r[5] == "0" and r[7] == "0" for r in rows)
    code, out = run("sweep", "--max", "2", "--mod", "24", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["all_pass"] and len(data["rows"]) == 10


def test_sweep_failure_exit_code():
    assert run("sweep", "--max", "1", "--mod", "7")[0] == 1


def test_output_is_deterministic():
    for argv in (("sweep", "--max", "3"), ("bh", "--dump-m4"), ("divisibility",)):
        assert run(*argv) == run(*argv)


def test_bh_dumps(monkeypatch):
    code, out = run("bh", "--dump-m4")
    assert code == 0
    assert "p6(M4)\t1958*top*u^2" in out.splitlines()
    assert "Sig\t8" in out.splitlines()
    monkeypatch.setenv("CHARNUM_CAP", "2")
    code, out = run("bh", "--dump-fiber-class")
    assert code == 0
    assert out.splitlines() == ["0\t1", "1\t2*p1", "2\t7/4*p1^2 - p2"]
    monkeypatch.setenv("CHARNUM_CAP", "zero")
    assert run("bh", "--dump-fiber-class")[0] == 2


def test_divisibility_passing_theorems():
    for name in ("1.2", "1.4", "sig32", "modsig"):
        code, out = run("divisibility", "--theorem", name)
        assert code == 0, out
        assert out.startswith("PASS")


def test_divisibility_reports_failures_with_witness():
    code, out = run("divisibility", "--theorem", "1.5")
    assert code == 1
    assert "witness x = [-1, 1, 0, 0]" in out


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "divisibility"])
def test_verify_suites(suite):
    code, out = run("verify", "--suite", suite)
    assert code == 0, out
    assert "FAIL" not in out


def test_verify_unknown_suite():
    assert run("verify", "--suite", "nope")[0] == 2
