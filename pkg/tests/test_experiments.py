"""Configuration parsing, the batch runner, and reporter file formats."""

import os
from pathlib import Path

import numpy as np
import pytest

from momo.errors import ConfigurationError
from momo.experiments import (
    parse_config,
    read_front_csv,
    run_experiment,
    serialize_config,
)

FULL_CONFIG = """<experiment>
  <process algorithm-type="ea">
    <mo-strategy type="hype">
      <sampling-size>10000</sampling-size>
    </mo-strategy>
    <evaluator type="wrm" mode="sequential"/>
    <recombinator type="blx_alpha" rec-prob="0.9"><alpha>0.5</alpha></recombinator>
    <mutator type="polynomial" mut-prob="0.15"><eta>20</eta></mutator>
    <population-size>100</population-size>
    <max-of-generations>500</max-of-generations>
    <rand-gen-factory multi="true">
      <rand-gen-factory seed="123456789"/>
      <rand-gen-factory seed="234567891"/>
      <rand-gen-factory seed="345678912"/>
      <rand-gen-factory seed="456789123"/>
      <rand-gen-factory seed="567891234"/>
      <rand-gen-factory seed="678912345"/>
      <rand-gen-factory seed="789123456"/>
      <rand-gen-factory seed="891234567"/>
      <rand-gen-factory seed="912345678"/>
      <rand-gen-factory seed="123456780"/>
    </rand-gen-factory>
    <listener type="pareto_front">
      <report-title>WRMExperiment</report-title>
    </listener>
    <listener type="comparison">
      <report-title>WRMExperiment</report-title>
      <number-of-algorithms>4</number-of-algorithms>
      <number-of-executions>10</number-of-executions>
      <indicators>
        <indicator type="hypervolume"/>
        <indicator type="spacing"/>
      </indicators>
    </listener>
  </process>
</experiment>
"""

SMALL_TEMPLATE = """<experiment>
  <process algorithm-type="ea">
    <mo-strategy type="{strategy}"/>
    <evaluator type="zdt1-n6" mode="{mode}"/>
    <recombinator type="sbx" rec-prob="0.9"><eta>20</eta></recombinator>
    <mutator type="polynomial" mut-prob="1.0"><eta>20</eta></mutator>
    <population-size>12</population-size>
    <max-of-generations>{gens}</max-of-generations>
    <rand-gen-factory multi="true">
      <rand-gen-factory seed="11"/>
      <rand-gen-factory seed="22"/>
    </rand-gen-factory>
    <listener type="pareto_front"><report-title>T</report-title></listener>
    <listener type="comparison">
      <report-title>T</report-title>
      <report-frequency>{freq}</report-frequency>
      <indicators><indicator type="hypervolume"/><indicator type="spacing"/></indicators>
    </listener>
  </process>
</experiment>
"""


def write_config(tmp_path, text, name="config.xml"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestParseConfig:
    def test_full_study_file(self, tmp_path):
        config = parse_config(write_config(tmp_path, FULL_CONFIG, "wrm-hype.xml"))
        assert config.config_id == "wrm-hype"
        assert config.strategy == "hype"
        assert config.strategy_params == {"sampling_size": 10000}
        assert config.problem == "wrm"
        assert config.rec_prob == 0.9 and config.mut_prob == 0.15
        assert config.population_size == 100 and config.max_generations == 500
        assert len(config.seeds) == 10
        assert config.title == "WRMExperiment"
        comparison = config.listeners[1]
        assert comparison.indicators == ["hypervolume", "spacing"]
        assert comparison.number_of_algorithms == 4
        assert comparison.number_of_executions == 10

    def test_missing_population_size_names_element(self, tmp_path):
        broken = FULL_CONFIG.replace("    <population-size>100</population-size>\n", "")
        with pytest.raises(ConfigurationError, match="population-size"):
            parse_config(write_config(tmp_path, broken))

    def test_round_trip(self, tmp_path):
        config = parse_config(write_config(tmp_path, FULL_CONFIG, "rt.xml"))
        again = parse_config(write_config(tmp_path, serialize_config(config), "rt.xml"))
        assert again == config
        assert again.hash() == config.hash()

    def test_hash_ignores_id(self, tmp_path):
        a = parse_config(write_config(tmp_path, FULL_CONFIG, "one.xml"))
        b = parse_config(write_config(tmp_path, FULL_CONFIG, "two.xml"))
        assert a.config_id != b.config_id and a.hash() == b.hash()

    def test_unknown_element_lists_path(self, tmp_path):
        broken = FULL_CONFIG.replace("<population-size>",
                                     "<island-count>4</island-count><population-size>")
        with pytest.raises(ConfigurationError, match="experiment/process/island-count"):
            parse_config(write_config(tmp_path, broken))

    def test_malformed_xml_reports_position(self, tmp_path):
        with pytest.raises(ConfigurationError, match="malformed XML"):
            parse_config(write_config(tmp_path, "<experiment><process>"))

    def test_unknown_strategy_id(self, tmp_path):
        broken = FULL_CONFIG.replace('type="hype"', 'type="rvea"')
        with pytest.raises(ConfigurationError, match="rvea"):
            parse_config(write_config(tmp_path, broken))

    def test_unknown_problem_id(self, tmp_path):
        broken = FULL_CONFIG.replace('type="wrm" mode="sequential"', 'type="tsp"')
        with pytest.raises(ConfigurationError, match="tsp"):
            parse_config(write_config(tmp_path, broken))

    def test_unknown_indicator_id(self, tmp_path):
        broken = FULL_CONFIG.replace('indicator type="spacing"', 'indicator type="r2"')
        with pytest.raises(ConfigurationError, match="r2"):
            parse_config(write_config(tmp_path, broken))

    def test_out_of_range_probability(self, tmp_path):
        broken = FULL_CONFIG.replace('rec-prob="0.9"', 'rec-prob="1.7"')
        with pytest.raises(ConfigurationError, match="1.7"):
            parse_config(write_config(tmp_path, broken))

    def test_error_carries_line_number(self, tmp_path):
        broken = FULL_CONFIG.replace('rec-prob="0.9"', 'rec-prob="boom"')
        with pytest.raises(ConfigurationError, match=r"line \d+"):
            parse_config(write_config(tmp_path, broken))

    def test_strategy_engine_mismatch(self, tmp_path):
        broken = FULL_CONFIG.replace('type="hype"', 'type="smpso"')
        with pytest.raises(ConfigurationError, match="pso"):
            parse_config(write_config(tmp_path, broken))

    def test_duplicate_seeds_rejected(self, tmp_path):
        broken = FULL_CONFIG.replace('seed="234567891"', 'seed="123456789"')
        with pytest.raises(ConfigurationError, match="distinct"):
            parse_config(write_config(tmp_path, broken))

    def test_objectives_declaration_checked(self, tmp_path):
        declared = FULL_CONFIG.replace(
            '<evaluator type="wrm" mode="sequential"/>',
            '<evaluator type="wrm" mode="sequential"><objectives>'
            + "".join(f'<objective type="f{i}" maximize="false"/>' for i in range(1, 6))
            + "</objectives></evaluator>")
        config = parse_config(write_config(tmp_path, declared))
        assert len(config.objectives) == 5
        wrong = declared.replace('maximize="false"', 'maximize="true"', 1)
        with pytest.raises(ConfigurationError, match="maximize"):
            parse_config(write_config(tmp_path, wrong))

    def test_single_seed_form(self, tmp_path):
        single = FULL_CONFIG.replace(
            FULL_CONFIG[FULL_CONFIG.index("<rand-gen-factory multi"):
                        FULL_CONFIG.index("</rand-gen-factory>") + len("</rand-gen-factory>")],
            '<rand-gen-factory seed="77"/>')
        config = parse_config(write_config(tmp_path, single))
        assert config.seeds == [77]


class TestRunExperiment:
    def _configs(self, tmp_path, n=2, gens=4, freq=2, mode="sequential"):
        configs = []
        for i, strategy in enumerate(("nsga2", "spea2")[:n]):
            text = SMALL_TEMPLATE.format(strategy=strategy, gens=gens, freq=freq, mode=mode)
            configs.append(parse_config(write_config(tmp_path, text, f"c{i}-{strategy}.xml")))
        return configs

    def test_record_grid_and_layout(self, tmp_path):
        configs = self._configs(tmp_path)
        records = run_experiment(configs, tmp_path / "out")
        assert len(records) == 4  # 2 configs x 2 seeds
        assert [(r.config_id, r.seed) for r in records] == [
            ("c0-nsga2", 11), ("c0-nsga2", 22), ("c1-spea2", 11), ("c1-spea2", 22)]
        for r in records:
            assert r.ok
            run_dir = Path(r.run_dir)
            assert run_dir == tmp_path / "out" / "T" / r.config_id
            assert (run_dir / f"pf-seed{r.seed}.csv").is_file()
            assert (run_dir / f"indicators-seed{r.seed}.csv").is_file()
            assert (run_dir / f"run-meta-seed{r.seed}.txt").is_file()

    def test_front_file_format_round_trips(self, tmp_path):
        configs = self._configs(tmp_path, n=1)
        run_experiment(configs, tmp_path / "out")
        path = tmp_path / "out" / "T" / "c0-nsga2" / "pf-seed11.csv"
        header = path.read_text().splitlines()[0]
        assert header == ",".join([f"var_{i}" for i in range(6)]
                                  + [f"obj_{k}" for k in range(2)])
        X, F = read_front_csv(path)
        assert X.shape[1] == 6 and F.shape[1] == 2 and len(X) > 0
        # 17 significant digits round-trip binary doubles exactly
        rewritten = "\n".join(
            ",".join(f"{v:.17g}" for v in np.concatenate([x, f])) for x, f in zip(X, F))
        assert rewritten in path.read_text()

    def test_indicator_row_count_includes_initial_and_final(self, tmp_path):
        configs = self._configs(tmp_path, n=1, gens=4, freq=2)
        run_experiment(configs, tmp_path / "out")
        path = tmp_path / "out" / "T" / "c0-nsga2" / "indicators-seed11.csv"
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "generation,evaluations,hypervolume,spacing"
        gens = [int(row.split(",")[0]) for row in lines[1:]]
        assert gens == [0, 2, 4]
        values = np.array([[float(v) for v in row.split(",")[2:]] for row in lines[1:]])
        assert np.isfinite(values).all()

    def test_parallel_runs_produce_identical_bytes(self, tmp_path):
        configs = self._configs(tmp_path)
        run_experiment(configs, tmp_path / "o1", parallel_runs=1)
        run_experiment(configs, tmp_path / "o4", parallel_runs=4)
        for sub in ("c0-nsga2", "c1-spea2"):
            for seed in (11, 22):
                for stem in (f"pf-seed{seed}.csv", f"indicators-seed{seed}.csv"):
                    a = (tmp_path / "o1" / "T" / sub / stem).read_bytes()
                    b = (tmp_path / "o4" / "T" / sub / stem).read_bytes()
                    assert a == b, f"{sub}/{stem}"

    def test_evaluator_mode_does_not_change_bytes(self, tmp_path):
        seq = self._configs(tmp_path, n=1, mode="sequential")
        run_experiment(seq, tmp_path / "seq")
        par = self._configs(tmp_path, n=1, mode="parallel")
        run_experiment(par, tmp_path / "par")
        a = (tmp_path / "seq" / "T" / "c0-nsga2" / "pf-seed11.csv").read_bytes()
        b = (tmp_path / "par" / "T" / "c0-nsga2" / "pf-seed11.csv").read_bytes()
        assert a == b

    def test_rerun_overwrites_identically(self, tmp_path):
        configs = self._configs(tmp_path, n=1)
        run_experiment(configs, tmp_path / "out")
        path = tmp_path / "out" / "T" / "c0-nsga2" / "pf-seed11.csv"
        first = path.read_bytes()
        run_experiment(configs, tmp_path / "out")
        assert path.read_bytes() == first

    def test_failing_run_recorded_without_aborting(self, tmp_path, monkeypatch):
        configs = self._configs(tmp_path)
        broken = configs[0]
        broken.strategy_params["bogus"] = 1  # triggers a construction failure
        records = run_experiment(configs, tmp_path / "out")
        assert not records[0].ok and not records[1].ok
        assert all(r.ok for r in records[2:])

    def test_seed_override_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MOMO_SEED_OVERRIDE", "99")
        configs = self._configs(tmp_path, n=1)
        records = run_experiment(configs, tmp_path / "out")
        assert [r.seed for r in records] == [99]
        assert (tmp_path / "out" / "T" / "c0-nsga2" / "pf-seed99.csv").is_file()
