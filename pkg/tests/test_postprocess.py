"""Statistics, SVG emission, and the handler-chain pipeline."""

import itertools
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from momo.errors import ConfigurationError, MomoError
from momo.indicators import Front
from momo.postprocess import (
    boxplot_svg,
    kruskal_wallis,
    merge_runs_pf,
    midranks,
    parallel_coordinates_svg,
    run_pipeline,
)


class TestKruskalWallis:
    def test_hand_derived_example(self):
        h, df, p = kruskal_wallis([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert h == pytest.approx(7.2, abs=1e-12)
        assert df == 2
        assert p == pytest.approx(np.exp(-3.6), abs=1e-9)  # chi2 tail at df=2

    def test_identical_groups_guard(self):
        h, df, p = kruskal_wallis([[5, 5, 5], [5, 5, 5]])
        assert h == 0.0 and p == 1.0

    def test_tie_correction_applied(self):
        untied = kruskal_wallis([[1, 2], [3, 4], [5, 6]])[0]
        tied = kruskal_wallis([[1, 1], [3, 3], [5, 6]])[0]
        assert tied != untied  # mid-ranks plus correction change H

    def test_group_count_validated(self):
        with pytest.raises(ConfigurationError):
            kruskal_wallis([[1, 2, 3]])

    def test_midranks_average_ties(self):
        np.testing.assert_allclose(midranks(np.array([10.0, 20.0, 10.0])),
                                   [1.5, 3.0, 1.5])

    def test_matches_permutation_null_small_samples(self, rng):
        # Monte Carlo permutation estimate of the null vs the chi2 tail,
        # groups of six each; the approximation is decent at this size
        values = np.array([0.31, 0.12, 0.55, 0.42, 0.77, 0.05,
                           0.62, 0.48, 0.91, 0.23, 0.68, 0.39])
        h_obs, _, p_chi2 = kruskal_wallis([values[:6], values[6:]])
        draws = 20000
        count = 0
        for _ in range(draws):
            shuffled = rng.permutation(values)
            h, _, _ = kruskal_wallis([shuffled[:6], shuffled[6:]])
            count += h >= h_obs - 1e-12
        p_perm = count / draws
        assert abs(p_perm - p_chi2) < 0.06


class TestSvg:
    def test_parallel_coordinates_structure(self, tmp_path):
        pts = np.array([[0.1, 0.9, 0.5], [0.4, 0.2, 0.8], [0.9, 0.5, 0.1]])
        path = parallel_coordinates_svg(pts, tmp_path / "pc.svg", title="demo")
        root = ET.fromstring(path.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        polylines = root.findall(f"{ns}polyline")
        axes = [e for e in root.findall(f"{ns}line") if e.get("class") == "axis"]
        labels = [e.text for e in root.findall(f"{ns}text")]
        assert len(polylines) == 3
        assert len(axes) == 3
        for k in range(3):
            assert f"obj_{k}" in labels

    def test_single_solution_polyline_touches_every_axis(self, tmp_path):
        path = parallel_coordinates_svg(np.array([[0.2, 0.4]]), tmp_path / "one.svg")
        root = ET.fromstring(path.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        poly = root.findall(f"{ns}polyline")
        assert len(poly) == 1
        assert len(poly[0].get("points").split()) == 2

    def test_boxplot_constant_group_zero_height(self, tmp_path):
        path = boxplot_svg({"a": np.array([2.0, 2.0, 2.0]),
                            "b": np.array([1.0, 3.0, 2.0])}, tmp_path / "b.svg")
        root = ET.fromstring(path.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        rects = root.findall(f"{ns}rect")
        assert len(rects) == 2
        assert float(rects[0].get("height")) == 0.0

    def test_boxplot_outliers_drawn(self, tmp_path):
        values = np.array([1.0, 1.1, 0.9, 1.05, 0.95, 9.0])
        path = boxplot_svg({"g": values}, tmp_path / "o.svg")
        root = ET.fromstring(path.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f"{ns}circle")) == 1

    def test_empty_input_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            parallel_coordinates_svg(np.empty((0, 2)), tmp_path / "x.svg")
        with pytest.raises(ValueError):
            boxplot_svg({}, tmp_path / "y.svg")


class TestMergeRuns:
    def test_identical_fronts_collapse(self):
        f = np.array([[0.0, 1.0], [1.0, 0.0]])
        merged = merge_runs_pf([f, f.copy(), f.copy()])
        assert len(merged) == 2

    def test_union_filtering(self):
        a = np.array([[0.5, 0.5]])
        b = np.array([[1.0, 1.0], [0.0, 0.9]])
        merged = merge_runs_pf([a, b])
        assert {tuple(p) for p in merged.points} == {(0.5, 0.5), (0.0, 0.9)}

    def test_single_run(self):
        f = np.array([[0.3, 0.7]])
        assert len(merge_runs_pf([f])) == 1

    def test_empty_rejected_with_label(self):
        with pytest.raises(MomoError, match="alg-x"):
            merge_runs_pf([], label="alg-x")


def synth_experiment(tmp_path, algos=("alpha", "beta"), seeds=(1, 2, 3), m=3):
    """Fabricated experiment tree with plausible fronts and indicator files."""
    rng = np.random.default_rng(5)
    root = tmp_path / "Study"
    for ai, algo in enumerate(algos):
        d = root / algo
        d.mkdir(parents=True)
        for seed in seeds:
            pts = rng.random((6, m)) + 0.05 * ai
            front = Front(pts).points
            header = ",".join([f"var_{i}" for i in range(2)] + [f"obj_{k}" for k in range(m)])
            rows = [header]
            for p in front:
                rows.append(",".join(["0.1", "0.2"] + [f"{v:.17g}" for v in p]))
            (d / f"pf-seed{seed}.csv").write_text("\n".join(rows) + "\n")
            hv = 0.5 + 0.1 * ai + 0.01 * seed
            sp = 0.2 - 0.02 * ai + 0.005 * seed
            (d / f"indicators-seed{seed}.csv").write_text(
                "generation,evaluations,hypervolume,spacing\n"
                f"0,10,{hv / 2},{sp * 2}\n5,60,{hv},{sp}\n")
    return root


class TestPipeline:
    def test_default_chain_produces_all_artifacts(self, tmp_path):
        root = synth_experiment(tmp_path)
        report = run_pipeline(root, chain="default", out_dir=tmp_path / "reports")
        names = {p.name for p in report.iterdir()}
        assert {"merged-alpha.csv", "merged-beta.csv", "reference-pf.csv",
                "scaled-alpha.csv", "scaled-beta.csv", "scaled-reference.csv",
                "boxplot-hypervolume.svg", "boxplot-spacing.svg",
                "parallel-alpha.svg", "parallel-beta.svg",
                "indicators.csv", "kruskal.txt"} <= names

    def test_indicator_table_shape_and_markers(self, tmp_path):
        root = synth_experiment(tmp_path)
        report = run_pipeline(root, out_dir=tmp_path / "reports")
        lines = (report / "indicators.csv").read_text().strip().splitlines()
        assert lines[0] == "indicator,alpha,beta,best"
        ids = [row.split(",")[0] for row in lines[1:]]
        assert ids == ["eps_mult", "eps_add", "gen_spread", "gd", "igd", "max_pf_error"]
        for row in lines[1:]:
            cells = row.split(",")
            assert cells[-1] in ("alpha", "beta")
            values = [float(c) for c in cells[1:-1]]
            assert all(np.isfinite(values))
        table = {row.split(",")[0]: [float(c) for c in row.split(",")[1:-1]]
                 for row in lines[1:]}
        for ind in ("gd", "igd", "max_pf_error"):
            assert all(v >= 0 for v in table[ind])
        assert all(v >= 1 for v in table["eps_mult"])

    def test_custom_chain_produces_only_requested_artifacts(self, tmp_path):
        root = synth_experiment(tmp_path)
        report = run_pipeline(root, chain="merge,reference", out_dir=tmp_path / "r2")
        names = {p.name for p in report.iterdir()}
        assert names == {"merged-alpha.csv", "merged-beta.csv", "reference-pf.csv"}

    def test_missing_upstream_names_the_step(self, tmp_path):
        root = synth_experiment(tmp_path)
        with pytest.raises(MomoError, match="merge"):
            run_pipeline(root, chain="reference", out_dir=tmp_path / "r3")

    def test_unknown_handler_rejected(self, tmp_path):
        root = synth_experiment(tmp_path)
        with pytest.raises(ConfigurationError, match="wilcoxon"):
            run_pipeline(root, chain="merge,wilcoxon", out_dir=tmp_path / "r4")

    def test_rerun_is_byte_identical(self, tmp_path):
        root = synth_experiment(tmp_path)
        report = run_pipeline(root, out_dir=tmp_path / "reports")
        snapshot = {p.name: p.read_bytes() for p in report.iterdir()}
        report = run_pipeline(root, out_dir=tmp_path / "reports")
        for p in report.iterdir():
            assert snapshot[p.name] == p.read_bytes()

    def test_missing_directory(self, tmp_path):
        with pytest.raises(MomoError):
            run_pipeline(tmp_path / "nope")

    def test_kruskal_report_format(self, tmp_path):
        root = synth_experiment(tmp_path)
        report = run_pipeline(root, chain="kruskal", out_dir=tmp_path / "r5")
        lines = (report / "kruskal.txt").read_text().strip().splitlines()
        assert len(lines) == 2
        for line in lines:
            fields = dict(tok.split("=") for tok in line.split())
            assert {"indicator", "H", "df", "p"} <= set(fields)
            assert 0.0 <= float(fields["p"]) <= 1.0
