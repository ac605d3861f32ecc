"""End-to-end CLI behavior: flags, config files, reports, exit codes."""

import json

import pytest

from modulitr.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out


def test_check_main_small(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(
        ["check-main", "--gmax", "1", "--nmax", "3", "--out", str(out_path)]
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["version"] == "1"
    assert doc["summary"]["fail"] == 0
    assert doc["config"]["gmax"] == 1
    csv_text = (tmp_path / "report.csv").read_text()
    assert csv_text.splitlines()[0] == "check,pass,fail,skip"


def test_stdout_report(capsys):
    code, out = run_cli(["check-n10", "--gmax", "1"], capsys)
    assert code == 0
    assert out.startswith("{")
    assert "check,pass,fail,skip" in out


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("gmax = 2\nnmax = 2\n")
    out_path = tmp_path / "r.json"
    code = main(
        [
            "check-n10",
            "--config",
            str(cfg),
            "--gmax",
            "1",
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["config"]["gmax"] == 1  # flag wins
    assert doc["config"]["nmax"] == 2  # file wins over default


def test_reports_byte_identical_across_jobs(tmp_path):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"r{jobs}.json"
        code = main(
            [
                "check-lemmas",
                "--gmax",
                "1",
                "--nmax",
                "2",
                "--kmax",
                "2",
                "--order",
                "5",
                "--jobs",
                jobs,
                "--out",
                str(path),
            ]
        )
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_cache_dir_flag(tmp_path):
    out_path = tmp_path / "r.json"
    code = main(
        [
            "check-n10",
            "--gmax",
            "1",
            "--cache-dir",
            str(tmp_path / "cache"),
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    assert (tmp_path / "cache" / "wk.cache").exists()


def test_dump_invariants(tmp_path):
    out_path = tmp_path / "dump.json"
    code = main(
        [
            "dump-invariants",
            "--gmax",
            "1",
            "--nmax",
            "2",
            "--kmax",
            "2",
            "--order",
            "4",
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["correlators"]["1;1"] == "1/24"


def test_unknown_subcommand_rejected():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
