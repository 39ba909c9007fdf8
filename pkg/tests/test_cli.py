import csv
import io
import json
import subprocess
import sys

import pytest

from resource_prover.cli import main

from helpers import BI_EXAMPLE, MLL_EXAMPLE, PLL_EXAMPLE, UNPROVABLE_EXAMPLE


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_prints_the_plain_proof(capsys):
    code, out, err = run(capsys, "prove", MLL_EXAMPLE)
    assert code == 0
    assert out.splitlines()[0].endswith("[tensorR]")
    assert "assignment:" in out
    assert "solver_calls=" in err


@pytest.mark.parametrize("text,logic", [(PLL_EXAMPLE, "pll"), (BI_EXAMPLE, "bi")])
@pytest.mark.parametrize("strategy", ["lazy", "eager", "n=2", "n=2:root", "fact-first"])
def test_prove_other_logics(capsys, text, logic, strategy):
    assert run(capsys, "prove", text, "--logic", logic, "--strategy", strategy)[0] == 0


def test_not_proved_exits_one(capsys):
    code, out, _ = run(capsys, "prove", UNPROVABLE_EXAMPLE)
    assert code == 1
    assert out.startswith("not proved (exhausted)")


def test_budget_exhaustion_exits_one(capsys):
    code, out, _ = run(capsys, "prove", MLL_EXAMPLE, "--budget", "2", "--output", "json")
    assert code == 1
    assert json.loads(out) == {"logic": "MLL", "endsequent": "p, p, q, q |- p * q * (p * q)",
                               "proved": False, "reason": "budget"}


def test_parse_error_points_at_the_column(capsys):
    code, _, err = run(capsys, "prove", "p * (q + r) |- p")
    assert code == 2
    lines = err.splitlines()
    assert lines[0].startswith("error:")
    assert lines[1] == "  p * (q + r) |- p"
    assert lines[2] == "  " + " " * 7 + "^"


@pytest.mark.parametrize("argv", [
    ["prove", "p + q |- p"],
    ["prove", "p |- p", "--strategy", "greedy"],
    ["prove", "p |- p", "--logic", "klein"],
    ["prove", "@/nonexistent/sequent.txt"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_sequent_from_file(capsys, tmp_path):
    f = tmp_path / "seq.txt"
    f.write_text(MLL_EXAMPLE + "\n")
    assert run(capsys, "prove", f"@{f}")[0] == 0


@pytest.mark.parametrize("extra", [[], ["--resource"]])
def test_prove_then_check(capsys, tmp_path, extra):
    code, out, _ = run(capsys, "prove", MLL_EXAMPLE, "--output", "json", *extra)
    assert code == 0
    f = tmp_path / "proof.json"
    f.write_text(out)
    code, out, _ = run(capsys, "check", str(f))
    assert (code, out.strip()) == (0, "valid")


def test_bi_proof_round_trips_through_check(capsys, tmp_path):
    _, out, _ = run(capsys, "prove", BI_EXAMPLE, "--logic", "bi", "--output", "json")
    f = tmp_path / "proof.json"
    f.write_text(out)
    assert run(capsys, "check", str(f))[0] == 0


def test_corrupted_proof_is_invalid(capsys, tmp_path):
    _, out, _ = run(capsys, "prove", MLL_EXAMPLE, "--output", "json")
    doc = json.loads(out)
    doc["tree"]["children"][0]["children"][0]["sequent"] = "p |- q"
    f = tmp_path / "proof.json"
    f.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", str(f))
    assert code == 1 and out.startswith("invalid:")


def test_wrong_endsequent_is_invalid(capsys, tmp_path):
    _, out, _ = run(capsys, "prove", MLL_EXAMPLE, "--output", "json")
    doc = json.loads(out)
    doc["endsequent"] = "p, q |- p * q"
    f = tmp_path / "proof.json"
    f.write_text(json.dumps(doc))
    assert run(capsys, "check", str(f))[0] == 1


def test_broken_resource_constraint_is_invalid(capsys, tmp_path):
    _, out, _ = run(capsys, "prove", MLL_EXAMPLE, "--output", "json", "--resource")
    doc = json.loads(out)
    doc["assignment"] = {k: 1 for k in doc["assignment"]}
    f = tmp_path / "proof.json"
    f.write_text(json.dumps(doc))
    assert run(capsys, "check", str(f))[0] == 1


def test_truncated_json_exits_two(capsys, tmp_path):
    _, out, _ = run(capsys, "prove", MLL_EXAMPLE, "--output", "json")
    f = tmp_path / "proof.json"
    f.write_text(out[: len(out) // 2])
    assert run(capsys, "check", str(f))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2


def test_small_sweep_agrees(capsys):
    code, out, err = run(capsys, "sweep", "--max-size", "3", "--random", "5", "--max-connectives", "4")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 216 + 5
    assert set(rows[0]) == {"sequent", "oracle", "agree"} | {
        f"{k}_{s}" for k in ("proved", "nodes", "solver_calls") for s in ("lazy", "eager", "n=2", "fact-first")}
    assert all(r["agree"] == "1" for r in rows)
    assert "0 disagreements" in err


def test_sweep_report_file(capsys, tmp_path):
    report = tmp_path / "out.csv"
    code, out, _ = run(capsys, "sweep", "--max-size", "2", "--strategies", "lazy", "--report", str(report))
    assert code == 0 and out == ""
    assert len(report.read_text().splitlines()) == 36 + 1


@pytest.mark.parametrize("argv", [["--max-size", "10000"], ["--atoms", "9"], ["--logic", "bi"],
                                  ["--strategies", "lazy,bogus"], ["--max-connectives", "99"]])
def test_sweep_rejects_bad_limits(capsys, argv):
    assert run(capsys, "sweep", *argv)[0] == 2


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "resource_prover.cli", "prove", "p |- p"],
                          capture_output=True, text=True, timeout=60)
    assert done.returncode == 0
    assert "[Axiom]" in done.stdout
