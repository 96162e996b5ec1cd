from __future__ import annotations

import json
import re
import subprocess
import sys

import pytest

from unilab import cli
from unilab.analysis import ClaimResult, ClaimStatus, TheoremSuiteReport

NON_MONOTONE = "ordinal(part([0, 1/2], product, rank=1), part((1/2, 1], product, rank=0))"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("spec,x,y,want", [
    ("example(drastic_umax)", "0.3", "0.4", "0"),
    ("min", "0.3", "0.4", "0.3"),
    ("example(fig5_t_rep_s)", "0.2", "0.9", "0.9"),
    ("representable(f=ln(x/(1-x)), conjunctive)", "0.8", "0.8", "0.941176470588"),
    ("product", "1/3", "1/2", "0.166666666667"),
])
def test_eval_examples(capsys, spec, x, y, want):
    code, out, _ = run(capsys, "eval", spec, x, y)
    assert code == 0 and out == want + "\n"


def test_eval_error_codes(capsys):
    code, _, err = run(capsys, "eval", "umin(T=product, S=max, e=)", "0", "0")
    assert code == 2 and "line 1, column 26" in err and "expected number" in err
    code, _, err = run(capsys, "eval", "rescale(min, [0, 1/2])", "0.7", "0.1")
    assert code == 3 and "outside the carrier" in err
    code, _, err = run(capsys, "eval", "ordinal(part([2/3, 1], prob_sum, rank=0), part([0, 1/3], product, rank=1), "
                       "part([1/3, 2/3], representable(f=ln(x/(1-x)), conjunctive), rank=2))", "0", "0")
    assert code == 2 and "2/3" in err


def test_spec_file_and_fmt(capsys, tmp_path):
    f = tmp_path / "u.aop"
    f.write_text("# Figure 1 pasting\nUMIN(t = product,\n     s = prob_sum, e = 0.5)\n", encoding="utf-8")
    code, out, _ = run(capsys, "fmt", str(f))
    assert code == 0 and out == "umin(T=product, S=prob_sum, e=1/2)\n"
    code, out, _ = run(capsys, "eval", str(f), "0.75", "0.5")
    assert out == "0.75\n"
    code, _, err = run(capsys, "fmt", str(tmp_path / "missing.aop"))
    assert code == 2


def test_analyze_drastic(capsys):
    code, out, _ = run(capsys, "analyze", "example(drastic_umax)")
    assert code == 0
    lines = set(out.splitlines())
    assert {"classification.in_U: false", "classification.in_UR: true",
            "classification.witness_point: (0.25, 0.5)"} <= lines
    assert out.startswith("tool: unilab\nversion: ")
    assert "tolerances.eq_tol: 1e-09" in lines and "spec: example(drastic_umax)" in lines


def test_analyze_fig1_and_product(capsys):
    _, out, _ = run(capsys, "analyze", "example(fig1_umin)")
    assert "classification.in_U: true" in out
    assert "svf.pieces[3]:" in out and "svf.pieces[4]:" not in out
    assert "structure.A: 1\nstructure.B: 0.5\nstructure.a: 0.5\nstructure.d: 0.5" in out
    _, out, _ = run(capsys, "analyze", "product", "--grid", "65")
    assert "classification.in_U: true" in out and "structure.e: 1" in out


def test_analyze_json_carries_the_same_content(capsys):
    _, text, _ = run(capsys, "analyze", "example(fig1_umax)", "--grid", "129")
    _, js, _ = run(capsys, "analyze", "example(fig1_umax)", "--grid", "129", "--format", "json")
    doc = json.loads(js)
    assert doc["classification"]["in_U"] is True
    assert f"svf.pieces[0]: {doc['svf']['pieces'][0]}" in text
    assert len(doc["theorems"]["claims"]) == 10


def test_analyze_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "analyze", "example(fig5_t_rep_s)", "--out", str(a))
    run(capsys, "analyze", "example(fig5_t_rep_s)", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert not list(tmp_path.glob(".*.tmp"))


def test_analyze_axiom_failure_still_writes_report(capsys, tmp_path):
    out = tmp_path / "r.txt"
    code, _, err = run(capsys, "analyze", NON_MONOTONE, "--grid", "65", "--out", str(out))
    assert code == 4 and "monotonicity" in err
    text = out.read_text()
    assert "axioms.monotonicity.status: fail" in text and "axioms.monotonicity.witness: (" in text


def test_analyze_rejects_partial_carrier(capsys):
    code, _, err = run(capsys, "analyze", "rescale(product, [0, 1/3])")
    assert code == 3


def test_tolerance_options(capsys):
    code, out, _ = run(capsys, "analyze", "min", "--grid", "33", "--eq-tol", "1e-8", "--jump-tol", "1e-3")
    assert code == 0 and "tolerances.eq_tol: 1e-08" in out and "tolerances.jump_tol: 0.001" in out
    code, _, err = run(capsys, "analyze", "min", "--eq-tol", "1e-2")
    assert code == 2 and "tolerances" in err


def test_plot_outputs(capsys, tmp_path):
    f1 = tmp_path / "f1.svg"
    assert run(capsys, "plot", "example(fig1_umin)", "--overlay", "discontinuities", "--out", str(f1))[0] == 0
    svg = f1.read_text()
    assert svg.startswith("<svg") and 'class="disc"' in svg and "data:image/png;base64," in svg
    assert 'class="svf' not in svg
    f5 = tmp_path / "f5.svg"
    run(capsys, "plot", "example(fig5_t_rep_s)", "--overlay", "svf", "--out", str(f5))
    svg5 = f5.read_text()
    assert svg5.count('class="svf"') >= 4 and 'class="disc"' not in svg5
    code, out, _ = run(capsys, "plot", "min")
    assert code == 0 and 'class="disc"' not in out and 'class="svf' not in out


def test_plot_is_deterministic(capsys):
    _, a, _ = run(capsys, "plot", "example(fig4_v)", "--overlay", "both", "--grid", "65")
    _, b, _ = run(capsys, "plot", "example(fig4_v)", "--overlay", "both", "--grid", "65")
    assert a == b


def test_plot_unwritable_path(capsys, tmp_path):
    code, _, err = run(capsys, "plot", "min", "--out", str(tmp_path / "no" / "such" / "dir.svg"))
    assert code == 5 and "cannot write" in err


def test_plot_partial_carrier(capsys):
    code, out, _ = run(capsys, "plot", "rescale(product, [0, 1/2])")
    assert code == 0 and out.startswith("<svg")
    assert run(capsys, "plot", "rescale(product, [0, 1/2])", "--overlay", "svf")[0] == 3


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all")
    assert code == 0
    header = out.splitlines()[1]
    assert all(name in header for name in ("fig1_umin", "fig5_t_rep_s", "drastic_umax"))
    assert sum(1 for line in out.splitlines() if line.startswith("(")) == 10
    assert not re.search(r"\bFAIL\b", out)


def test_verify_expected_failures(capsys):
    code, out, _ = run(capsys, "verify", "example(drastic_umax)")
    assert code == 0 and "XFAIL (0.25, 0.5)" in out
    code, out, _ = run(capsys, "verify", "umin(T=drastic_tnorm, S=max, e=1/2)", "--grid", "129")
    assert code == 0 and "XFAIL" in out and not re.search(r"\bFAIL\b", out)


def test_verify_reports_failures(capsys, monkeypatch):
    def broken(U, grid=None, cfg=None):
        rep = TheoremSuiteReport("x", True)
        rep.claims.append(ClaimResult(6, "at most one jump per section", ClaimStatus.FAIL, (0.5,), "two jumps"))
        return rep

    monkeypatch.setattr(cli, "verify_theorems", broken)
    code, _, err = run(capsys, "verify", "min", "--grid", "33")
    assert code == 1 and "claim (6)" in err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "example(fig1_umin)", "--format", "json", "--grid", "129")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["operators"][0]["theorems"]["in_U"]


def test_verify_needs_a_target(capsys):
    assert run(capsys, "verify")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unilab.cli", "eval", "min", "0.3", "0.4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "0.3\n"
