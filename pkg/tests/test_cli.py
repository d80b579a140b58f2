import json
import subprocess
import sys
from pathlib import Path

import pytest

from twistlab import cli
from twistlab.gnf import closed_form_half, one_blocks
from twistlab.polymat import matrix_from_json
from twistlab.rep import Spin, build_jordanian
from twistlab.report import CheckReport

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_PAIRS = [("1/2", "1/2"), ("1/2", "1"), ("1", "1/2"), ("1", "1")]


def golden_path(j1, j2):
    return GOLDEN / f"rmatrix_{j1.replace('/', '_')}__{j2.replace('/', '_')}.json"


@pytest.mark.parametrize("j1, j2", GOLDEN_PAIRS)
def test_emit_rmatrix_matches_golden_bytes(j1, j2, tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["emit-rmatrix", "--j1", j1, "--j2", j2, "--output", str(out)]) == 0
    assert out.read_bytes() == golden_path(j1, j2).read_bytes()


@pytest.mark.parametrize("j", ["1/2", "1"])
def test_golden_half_blocks_follow_closed_form(j):
    doc = json.loads(golden_path("1/2", j).read_text())
    assert matrix_from_json(doc["matrix"]) == closed_form_half(j)
    d = Spin.parse(j).dim
    assert matrix_from_json(doc["blocks"]["2,1"]).is_zero
    assert matrix_from_json(doc["blocks"]["1,1"]) == build_jordanian(Spin.parse(j)).T
    assert len(doc["matrix"]) == 2 * d


@pytest.mark.parametrize("j", ["1/2", "1"])
def test_golden_named_blocks(j):
    doc = json.loads(golden_path("1", j).read_text())
    blocks = one_blocks(build_jordanian(Spin.parse(j)))
    for name in "ABC":
        assert matrix_from_json(doc["named_blocks"][name]) == blocks[name]


def test_half_half_golden_has_no_parameter():
    assert "y" not in golden_path("1/2", "1/2").read_text()


def test_emit_generators(capsys):
    assert cli.main(["emit-generators", "--j", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["X"] == [["0", "2", "0"], ["0", "0", "2"], ["0", "0", "0"]]
    assert cli.main(["emit-generators", "--j", "1/2", "--format", "latex"]) == 0
    assert "\\begin{pmatrix}" in capsys.readouterr().out


def test_contract_command(capsys):
    assert cli.main(["contract", "--j1", "1", "--j2", "1/2", "--trace"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["R_limit_equals_Rh"] and doc["F_limit_equals_Fh"]
    assert doc["F_order_trace"].startswith("row,col")


def test_verify_gnf_eight_triples(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["verify", "--suites", "gnf", "--spins", "1/2,1", "--output", str(out)]) == 0
    report = CheckReport.from_json(out.read_text())
    assert len(report.by_id("gnf")) == 8


def test_verify_config_error_exit_2(capsys):
    assert cli.main(["verify", "--suites", "gnf", "--spins", "5/2", "--max-dim", "27"]) == 2
    assert "216" in capsys.readouterr().err


def test_unknown_suite_is_config_error():
    assert cli.main(["verify", "--suites", "plotting"]) == 2


@pytest.mark.parametrize("argv", [["verify", "--spins", "1/3"], ["verify", "--format", "yaml"]])
def test_unparsable_arguments_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_verify_failure_exit_1(tmp_path):
    scripts = tmp_path / "s"
    scripts.mkdir()
    (scripts / "bad.eq").write_text((Path(__file__).parent / "data" / "gnf_wrong_shift_leg.eq").read_text())
    assert cli.main(["verify", "--suites", "scripts", "--spins", "1", "--scripts-dir", str(scripts),
                     "--format", "text", "--output", str(tmp_path / "r.txt")]) == 1
    assert "FAIL" in (tmp_path / "r.txt").read_text()


def test_verify_scripts_suite(tmp_path):
    out = tmp_path / "r.json"
    scripts = Path(cli.legscript.shipped_dir())
    assert cli.main(["verify", "--suites", "scripts", "--spins", "1/2", "--scripts-dir", str(scripts),
                     "--output", str(out)]) == 0
    ids = {r.identity_id for r in CheckReport.from_json(out.read_text()).results}
    assert {"script_agreement:gnf", "script_agreement:cocycle", "script_agreement:symmetric_gnf"} <= ids


def test_worker_pool_matches_serial(monkeypatch):
    cfg = cli.RunConfig(suites=("exchange", "twist"), spins=(Spin(1), Spin(2)))
    monkeypatch.setenv("TWISTLAB_THREADS", "1")
    serial = cli.run_verify(cfg)
    monkeypatch.setenv("TWISTLAB_THREADS", "2")
    pooled = cli.run_verify(cfg)
    assert serial[0] == pooled[0] == 0
    assert serial[1].to_json() == pooled[1].to_json()


def test_bad_thread_count(monkeypatch):
    monkeypatch.setenv("TWISTLAB_THREADS", "many")
    assert cli.main(["verify", "--suites", "exchange", "--spins", "1/2"]) == 2


def test_exit_status_depends_only_on_report():
    from twistlab.report import CheckResult

    ok = CheckReport([CheckResult("a", "", ("1/2",), "pass"), CheckResult("b", "", ("1/2",), "skipped")])
    bad = CheckReport(ok.results + [CheckResult("c", "", ("1/2",), "fail", {"row": 0})])
    assert cli.exit_status(ok) == 0 and cli.exit_status(bad) == 1


@pytest.mark.parametrize("fmt, marker", [("latex", "\\begin{tabular}"), ("text", "PASS")])
def test_report_renderings(fmt, marker, capsys):
    assert cli.main(["verify", "--suites", "exchange", "--spins", "1/2", "--format", fmt]) == 0
    assert marker in capsys.readouterr().out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistlab.cli", "emit-rmatrix", "--j1", "1/2", "--j2", "1/2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.encode() == golden_path("1/2", "1/2").read_bytes()
