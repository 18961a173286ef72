"""CLI subcommands: exit codes, registry listings, the status line contract."""

import numpy as np
import pytest

from momo.cli import main

GOOD = """<experiment>
  <process algorithm-type="ea">
    <mo-strategy type="nsga2"/>
    <evaluator type="zdt1-n5"/>
    <recombinator type="sbx" rec-prob="0.9"/>
    <mutator type="polynomial" mut-prob="1.0"/>
    <population-size>8</population-size>
    <max-of-generations>2</max-of-generations>
    <rand-gen-factory seed="5"/>
    <listener type="pareto_front"><report-title>CliT</report-title></listener>
  </process>
</experiment>
"""

BAD = GOOD.replace('type="nsga2"', 'type="unknown-strategy"')


def last_line(capsys):
    return capsys.readouterr().out.strip().splitlines()[-1]


def parse_status(line):
    return dict(tok.split("=", 1) for tok in line.split())


class TestList:
    @pytest.mark.parametrize("kind,expected", [
        ("strategies", ["grea", "hype", "ibea", "moead", "nsga2", "nsga3", "smpso", "spea2"]),
        ("problems", ["dtlz1", "dtlz2", "knapsack", "wrm", "zdt1", "zdt2", "zdt3"]),
        ("indicators", ["eps_add", "gd", "hypervolume", "igd", "spacing"]),
        ("operators", ["bit_flip", "blx_alpha", "one_point", "polynomial", "sbx", "uniform_int"]),
    ])
    def test_kinds_listed_sorted(self, capsys, kind, expected):
        assert main(["list", kind]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        body = out[:-1]
        names = [line.split()[0] for line in body]
        assert names == sorted(names)
        for item in expected:
            assert item in names
        status = parse_status(out[-1])
        assert status["status"] == "ok" and status["kind"] == kind

    def test_unknown_kind_exits_2(self, capsys):
        assert main(["list", "plugins"]) == 2
        assert parse_status(last_line(capsys))["status"] == "error"


class TestValidate:
    def test_valid_config(self, tmp_path, capsys):
        path = tmp_path / "ok.xml"
        path.write_text(GOOD)
        assert main(["validate", str(path)]) == 0
        status = parse_status(last_line(capsys))
        assert status["status"] == "ok" and status["checked"] == "1"

    def test_invalid_config(self, tmp_path, capsys):
        path = tmp_path / "bad.xml"
        path.write_text(BAD)
        assert main(["validate", str(path)]) == 2
        assert parse_status(last_line(capsys))["invalid"] == "1"

    def test_missing_path(self, capsys):
        assert main(["validate", "/nonexistent/x.xml"]) == 2


class TestRun:
    def test_single_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.xml"
        cfg.write_text(GOOD)
        assert main(["run", str(cfg), "--out", str(tmp_path / "out")]) == 0
        status = parse_status(last_line(capsys))
        assert status == {"status": "ok", "command": "run", "runs": "1",
                          "failed": "0", "out": str(tmp_path / "out")}
        assert (tmp_path / "out" / "CliT" / "cfg" / "pf-seed5.csv").is_file()

    def test_directory_of_configs(self, tmp_path, capsys):
        (tmp_path / "a.xml").write_text(GOOD)
        (tmp_path / "b.xml").write_text(GOOD.replace("nsga2", "spea2"))
        assert main(["run", str(tmp_path), "--out", str(tmp_path / "out"), "--jobs", "2"]) == 0
        assert parse_status(last_line(capsys))["runs"] == "2"

    def test_bad_config_aborts_before_any_output(self, tmp_path, capsys):
        (tmp_path / "a.xml").write_text(GOOD)
        (tmp_path / "b.xml").write_text(BAD)
        out = tmp_path / "out"
        assert main(["run", str(tmp_path), "--out", str(out)]) == 2
        assert not out.exists()  # validation happens before execution
        assert parse_status(last_line(capsys))["status"] == "error"

    def test_no_configs_found(self, tmp_path, capsys):
        empty = tmp_path / "empty"
        empty.mkdir()
        assert main(["run", str(empty), "--out", str(tmp_path / "o")]) == 2

    def test_jobs_do_not_change_outputs(self, tmp_path):
        cfg = tmp_path / "cfg.xml"
        cfg.write_text(GOOD)
        main(["run", str(cfg), "--out", str(tmp_path / "o1"), "--jobs", "1"])
        main(["run", str(cfg), "--out", str(tmp_path / "o4"), "--jobs", "4"])
        a = (tmp_path / "o1" / "CliT" / "cfg" / "pf-seed5.csv").read_bytes()
        b = (tmp_path / "o4" / "CliT" / "cfg" / "pf-seed5.csv").read_bytes()
        assert a == b

    def test_seed_override(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("MOMO_SEED_OVERRIDE", "1234")
        cfg = tmp_path / "cfg.xml"
        cfg.write_text(GOOD)
        assert main(["run", str(cfg), "--out", str(tmp_path / "out")]) == 0
        assert (tmp_path / "out" / "CliT" / "cfg" / "pf-seed1234.csv").is_file()


class TestPostprocess:
    def test_missing_dir_exits_2(self, tmp_path, capsys):
        assert main(["postprocess", str(tmp_path / "missing")]) == 2
        assert parse_status(last_line(capsys))["status"] == "error"

    def test_full_cycle(self, tmp_path, capsys):
        for name, strategy in (("a", "nsga2"), ("b", "spea2")):
            cfg = GOOD.replace("nsga2", strategy).replace(
                "<listener", """<listener type="comparison">
                  <report-title>CliT</report-title>
                  <indicators><indicator type="hypervolume"/><indicator type="spacing"/></indicators>
                </listener><listener""", 1).replace(
                '<rand-gen-factory seed="5"/>',
                '<rand-gen-factory multi="true"><rand-gen-factory seed="5"/>'
                '<rand-gen-factory seed="6"/></rand-gen-factory>')
            (tmp_path / f"{name}.xml").write_text(cfg)
        assert main(["run", str(tmp_path), "--out", str(tmp_path / "out")]) == 0
        assert main(["postprocess", str(tmp_path / "out" / "CliT"),
                     "--out", str(tmp_path / "reports")]) == 0
        status = parse_status(last_line(capsys))
        assert status["status"] == "ok"
        report = tmp_path / "reports" / "CliT"
        assert (report / "indicators.csv").is_file()
        assert (report / "kruskal.txt").is_file()

    def test_custom_chain(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.xml"
        cfg.write_text(GOOD)
        main(["run", str(cfg), "--out", str(tmp_path / "out")])
        assert main(["postprocess", str(tmp_path / "out" / "CliT"),
                     "--chain", "merge,reference",
                     "--out", str(tmp_path / "reports")]) == 0
        names = {p.name for p in (tmp_path / "reports" / "CliT").iterdir()}
        assert names == {"merged-cfg.csv", "reference-pf.csv"}


def test_status_line_is_always_last_and_parsable(tmp_path, capsys):
    for argv, code in ((["list", "strategies"], 0), (["list", "nope"], 2)):
        assert main(argv) == code
        line = last_line(capsys)
        fields = parse_status(line)
        assert "status" in fields
