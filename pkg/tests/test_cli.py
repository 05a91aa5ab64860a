import json
import subprocess
import sys

import pytest

from logictrans.cli import main
from logictrans.verify import strip_timing


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name,text,image", [
    ("Tg", "(not p)", "(box (not (box p)))"),
    ("Tl", "(not p)", "(-> p (not p))"),
    ("TE", "(-> p q)", "(and (-> p q) d{p,q})"),
])
def test_translate(capsys, name, text, image):
    code, out, _ = run(capsys, "translate", name, text)
    assert code == 0 and out.strip() == image


def test_translate_errors_have_distinct_codes(capsys):
    unknown, _, err = run(capsys, "translate", "Nope", "p")
    bad, _, err2 = run(capsys, "translate", "Tg", "(not p")
    missing, _, _ = run(capsys, "translate", "Tl", "(and p q)")
    assert (unknown, bad, missing) == (2, 3, 4)
    assert "unknown translation" in err and "parse" in err2


@pytest.mark.parametrize("name,has,lacks", [
    ("Tg", {"compositional", "GR^C"}, {"definitional-shape"}),
    ("Tprime", {"opaque"}, {"compositional"}),
    ("DemriGore", {"general-recursive"}, {"compositional"}),
])
def test_classify(capsys, name, has, lacks):
    code, out, _ = run(capsys, "classify", name)
    shape = json.loads(out)["shape"]
    assert code == 0
    assert has <= set(shape["named"]) and not lacks & set(shape["named"])
    if name == "DemriGore":
        assert shape["translator_count"] == 2


def test_usage_errors(capsys):
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "semantics", "--bounds", "max_nodes=0")[0] == 2
    assert run(capsys, "verify", "edge", "CPL->L3 via Tg")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "classify", "Nope")[0] == 2
    assert run(capsys, "translate", "Tg", "p", "--catalog", "/nonexistent")[0] == 2


def test_verify_edge_writes_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "edge", "CPL->L3 via Tl", "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema"] == "logictrans-report/1"
    th = [e for e in report["results"][0]["entries"] if e["property"] == "theoremhood"]
    assert th[0]["verdict"] == "valid-exact"


def test_mismatch_exit_code(capsys, tmp_path):
    cat = tmp_path / "c.txt"
    cat.write_text("translation Bad\nsource CPL\ntarget CPL\nopaque constant (or p (not p))\n"
                   "expect gate_gg pass\n")
    code, out, _ = run(capsys, "verify", "edge", "CPL->CPL via Bad", "--catalog", str(cat))
    assert code == 1 and "FAIL" in out


def test_worker_counts_give_identical_reports(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "semantics", "connectives", "--bounds", "max_nodes=2"]
    run(capsys, *args, "--workers", "1", "--out", str(a))
    run(capsys, *args, "--workers", "2", "--out", str(b))
    assert json.dumps(strip_timing(json.loads(a.read_text()))) == json.dumps(strip_timing(json.loads(b.read_text())))


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "logictrans.cli", "translate", "Tg", "(not p)"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "(box (not (box p)))"
