import csv

import pytest

from mscs.cli import build_parser, main, read_config
from mscs.harness import ConfigError


def test_bench_writes_outputs(tmp_path, capsys):
    out = tmp_path / "o"
    code = main(["bench", "--function", "f1", "--dim", "3", "--trials", "2", "--iters", "15",
                 "--seed", "4", "--out", str(out)])
    assert code == 0
    assert (out / "results.csv").exists() and (out / "summary.csv").exists()
    assert "f1 mscs" in capsys.readouterr().out


def test_trace_command(tmp_path):
    out = tmp_path / "t"
    assert main(["trace", "--function", "f5", "--dim", "3", "--trials", "2", "--iters", "12",
                 "--out", str(out)]) == 0
    rows = list(csv.reader(open(out / "trace.csv")))
    assert len(rows) == 13


def test_case_command(tmp_path, iris_path):
    out = tmp_path / "c"
    assert main(["case", "--name", "iris", "--data", str(iris_path), "--runs", "1", "--out", str(out)]) == 0
    assert (out / "report.csv").exists()


def test_config_file_overrides_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\ntrials = 1\n--max-fe = 300\nalgo=cs\n\n")
    out = tmp_path / "o"
    assert main(["bench", "--function", "f2", "--dim", "2", "--trials", "5", "--iters", "1000",
                 "--out", str(out), "--config", str(cfg)]) == 0
    rows = list(csv.DictReader(open(out / "results.csv")))
    assert len(rows) == 1 and rows[0]["algo"] == "cs" and rows[0]["fe_used"] == "300"


def test_config_parsing_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("trials 3\n")
    with pytest.raises(ConfigError):
        read_config(bad)


def test_unknown_config_key_exits_nonzero(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["bench", "--function", "f2", "--out", str(tmp_path), "--config", str(cfg)]) == 2
    assert "colour" in capsys.readouterr().err


def test_unknown_function_exits_nonzero(tmp_path):
    assert main(["bench", "--function", "nope", "--out", str(tmp_path)]) == 2


def test_parser_requires_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
