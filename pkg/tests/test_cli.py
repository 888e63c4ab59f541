import json
import subprocess
import sys

import pytest

from hfree.cli import load_config, run, UsageError
from hfree.families import make_fan, make_s_minus
from hfree.graph import write_graph6
from hfree.enumeration import make_record
from hfree.spectral import lemma22_bound, odd_bound, rho_prime


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_rho_prime(capsys):
    assert run(["rho-prime", "38"]) == 0
    out = _json(capsys)
    assert out["rho_prime"] == rho_prime(38)
    assert out["lower_bound"] == lemma22_bound(38) < out["rho_prime"] < out["upper_bound"] == odd_bound(38)


def test_rho(capsys):
    assert run(["rho", write_graph6(make_s_minus(8))]) == 0
    out = _json(capsys)
    assert abs(out["rho"] - rho_prime(12)) < 1e-9
    assert out["iterations"] > 0 and out["residual"] < 1e-9


def test_families(capsys):
    assert run(["families", "s_minus:21"]) == 0
    out = _json(capsys)
    assert (out["n"], out["m"]) == (21, 38)
    assert sorted(out["degrees"], reverse=True)[:2] == [20, 19]


def test_check_f5(capsys):
    assert run(["check", write_graph6(make_fan(5)), "--pattern", "h43"]) == 0
    out = _json(capsys)
    assert out["contains"] is True and len(out["witness"]) == 6


def test_check_free(capsys):
    assert run(["check", write_graph6(make_s_minus(10)), "--pattern", "h43"]) == 0
    assert _json(capsys) == {"contains": False, "witness": None}


@pytest.mark.parametrize("argv", [[], ["bogus"], ["rho-prime", "7"], ["rho", "!!"],
                                  ["check", "Bw", "--pattern", "nonsense!"], ["enumerate", "--m", "20"],
                                  ["rho-prime", "10", "--workers", "0"], ["families", "nope:1"]])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_enumerate_and_report(tmp_path, capsys):
    out = tmp_path / "e.jsonl"
    csv_path = tmp_path / "e.csv"
    assert run(["enumerate", "--m", "9", "--forbid", "h33,h43", "--out", str(out), "--csv", str(csv_path)]) == 0
    err = capsys.readouterr().err
    assert "9,610," in err and ",yes," in err
    assert csv_path.read_text().startswith("m,count")
    out10 = tmp_path / "e10.jsonl"
    assert run(["enumerate", "--m", "10", "--forbid", "h33,h43", "--out", str(out10)]) == 0
    capsys.readouterr()
    assert run(["report", str(out), str(out10)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert all(",yes," in line for line in lines[1:])


def test_enumerate_checkpoint_resume(tmp_path, capsys):
    ck = tmp_path / "ck.json"
    out = tmp_path / "r.jsonl"
    assert run(["enumerate", "--m", "7", "--checkpoint", str(ck), "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 79
    # a finished checkpoint resumes to a no-op and keeps the results file
    assert run(["enumerate", "--m", "7", "--checkpoint", str(ck), "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 79
    assert run(["enumerate", "--m", "6", "--checkpoint", str(ck)]) == 1
    capsys.readouterr()
    ck2 = tmp_path / "ck2.json"
    from hfree.enumeration import EnumerationTask, enumerate_connected
    enumerate_connected(EnumerationTask(7), lambda r: None, checkpoint=str(ck2), stop_after=100)
    assert run(["enumerate", "--m", "7", "--checkpoint", str(ck2), "--out", str(tmp_path / "x.jsonl")]) == 0
    assert "7,79,3.0861" in capsys.readouterr().err


def test_enumerate_no_isolated(capsys):
    assert run(["enumerate", "--m", "3", "--no-isolated"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 5


def test_report_empty_and_corrupt(tmp_path, capsys):
    assert run(["report"]) == 0
    assert capsys.readouterr().out.strip() == "m,count,max_rho,bound,extremal_graph6,tight,gap"
    path = tmp_path / "mixed.jsonl"
    good = [make_record(make_s_minus(7)).to_json() for _ in range(99)]
    path.write_text("\n".join(good[:40] + ["{oops"] + good[40:]) + "\n")
    assert run(["report", str(path), "--format", "markdown"]) == 0
    cap = capsys.readouterr()
    assert "| 10 | 99 |" in cap.out
    assert "skipped 1 malformed" in cap.err


def test_audit_commands(capsys):
    assert run(["audit", "--fixture", "s-minus", "--m", "38..42"]) == 0
    out = _json(capsys)
    assert [r["m"] for r in out] == [38, 40, 42] and all(r["ok"] for r in out)
    assert run(["audit", write_graph6(make_s_minus(21)), "--json"]) == 0
    rep = _json(capsys)
    assert any(e["name"] == "final_F_prime" and e["status"] == "PASS" for e in rep["entries"])


def test_search(tmp_path, capsys):
    out = tmp_path / "trace.jsonl"
    assert run(["search", "--m", "9", "--forbid", "h33,h43", "--restarts", "20", "--out", str(out)]) == 0
    summary = _json(capsys)
    assert abs(summary["best_rho"] - odd_bound(9)) < 1e-6
    assert summary["seed"] == 20240601
    assert len(out.read_text().splitlines()) == 20


def test_config_file_and_env(tmp_path, monkeypatch):
    cfg_path = tmp_path / "hfree.cfg"
    cfg_path.write_text("# defaults\nworkers = 3\nseed=5\ntol=1e-10\n")
    monkeypatch.setenv("HFREE_WORKERS", "2")
    assert load_config(None).workers == 2
    cfg = load_config(str(cfg_path))
    assert (cfg.workers, cfg.seed, cfg.tol) == (3, 5, 1e-10)
    cfg_path.write_text("bogus = 1\n")
    with pytest.raises(UsageError):
        load_config(str(cfg_path))


def test_flags_override_config(tmp_path, capsys):
    cfg_path = tmp_path / "hfree.cfg"
    cfg_path.write_text("tol = 0.5\n")
    assert run(["rho", "Bw", "--config", str(cfg_path), "--tol", "1e-12"]) == 0
    assert abs(_json(capsys)["rho"] - 2.0) < 1e-10  # Bw is the triangle


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hfree", "rho-prime", "10"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["m"] == 10


def test_verify_exit_codes(monkeypatch, capsys):
    from hfree import acceptance

    def fake(results_ok):
        def run_suite(quick, workers, seed, report):
            res = [acceptance.CriterionResult(i, f"c{i}", results_ok or i != 3, "stub") for i in range(1, 11)]
            for r in res:
                report(r.line())
            return res
        return run_suite

    monkeypatch.setattr(acceptance, "run_suite", fake(True))
    assert run(["verify", "--suite", "paper", "--quick"]) == 0
    cap = capsys.readouterr()
    assert len(json.loads(cap.out)) == 10 and cap.err.count("[PASS]") == 10
    monkeypatch.setattr(acceptance, "run_suite", fake(False))
    assert run(["verify", "--quick"]) == 1
    assert run(["verify", "--suite", "other"]) == 2
