import json

from comex.cli import main, parse_seeds
from comex.results import CSV_HEADER


def test_parse_seeds_forms():
    assert parse_seeds("0..3") == (0, 1, 2, 3)
    assert parse_seeds("0,4,9") == (0, 4, 9)
    assert parse_seeds("7") == (7,)


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "audit-lemma1" in capsys.readouterr().out


def test_unknown_flag_is_usage_error(capsys):
    code = main(["run", "--definitely-not-a-flag"])
    assert code == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_missing_command_is_usage_error():
    assert main([]) == 2


def test_run_writes_summary_csv(tmp_path, capsys):
    out = tmp_path / "result.csv"
    code = main(["run", "--problem", "nqueens", "--n", "4", "--algo", "rs",
                 "--budget", "6", "--seeds", "0..2", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 7
    assert "final regret" in capsys.readouterr().out


def test_run_writes_json_with_config_echo(tmp_path):
    out = tmp_path / "result.json"
    code = main(["run", "--problem", "nqueens", "--n", "4", "--algo", "comex",
                 "--budget", "3", "--seeds", "1", "--format", "json",
                 "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["problem"] == "nqueens"
    assert doc["config"]["budget"] == 3
    assert len(doc["traces"]) == 1
    assert len(doc["traces"][0]["regret"]) == 3


def test_run_accepts_config_file(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("problem = nqueens\nn = 4\nalgo = rs\nbudget = 4\nseeds = 0,1\n")
    code = main(["run", "--config", str(cfg)])
    assert code == 0
    assert "nqueens / rs: 2 run(s), 4 steps" in capsys.readouterr().out


def test_run_save_instance(tmp_path):
    inst = tmp_path / "inst.json"
    code = main(["run", "--problem", "contamination", "--d", "6", "--algo", "rs",
                 "--budget", "2", "--save-instance", str(inst)])
    assert code == 0
    assert json.loads(inst.read_text())["kind"] == "contamination"


def test_lemma_audit_prints_per_step_verdicts(capsys):
    code = main(["audit-lemma1", "--d", "4", "--m", "1", "--eta", "0.01",
                 "--steps", "5", "--seed", "3"])
    out = capsys.readouterr().out
    assert out.count("step") >= 5
    assert code in (0, 1)  # per-step verdicts decide the exit code
    assert ("PASS" in out) or ("FAIL" in out)


def test_theorem_audit_passes(capsys):
    code = main(["audit-theorem1", "--d", "5", "--m", "2", "--steps", "2",
                 "--eta", "0.01", "--seed", "0"])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_bench_step_time_reports_ratio(capsys):
    code = main(["bench-step-time", "--problem", "contamination", "--d", "8",
                 "--budget", "30", "--m", "2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "late/early ratio" in out


def test_runtime_error_returns_one(tmp_path, capsys):
    code = main(["run", "--problem", "contamination", "--instance-file",
                 str(tmp_path / "missing.json"), "--budget", "2"])
    assert code == 1
    assert "error:" in capsys.readouterr().err
