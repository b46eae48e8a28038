import json
import math

import numpy as np
import pytest

from mifnet.backbone import build_edge_list, score_edges, sweep_alpha
from mifnet.charts import ChartSpec
from mifnet.cli import main
from mifnet.ingest import FeatureColumn, FeatureKind, FeatureTable, NullPolicy
from mifnet.layout import fruchterman_reingold
from mifnet.pipeline import (
    CHARTS_FILENAME,
    GRAPH_FILENAME,
    MANIFEST_FILENAME,
    ConfigError,
    PipelineConfig,
    export_charts,
    export_graph,
    run_pipeline,
)
from mifnet.synthetic import write_demo_csv

import oracles


@pytest.fixture(scope="module")
def demo_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "demo.csv"
    write_demo_csv(path, n_records=150, seed=11)
    return path


def read_artifacts(out_dir):
    return (
        (out_dir / GRAPH_FILENAME).read_bytes(),
        (out_dir / CHARTS_FILENAME).read_bytes(),
        (out_dir / MANIFEST_FILENAME).read_bytes(),
    )


class TestRunPipeline:
    def test_smoke_consistency(self, demo_csv, tmp_path):
        config = PipelineConfig(str(demo_csv), str(tmp_path / "out"))
        graph, charts, manifest = run_pipeline(config)
        assert (tmp_path / "out" / GRAPH_FILENAME).is_file()
        assert (tmp_path / "out" / CHARTS_FILENAME).is_file()
        assert (tmp_path / "out" / MANIFEST_FILENAME).is_file()
        assert manifest.n_features == len(graph["nodes"]) == 24
        assert manifest.n_edges_retained == len(graph["edges"])
        assert manifest.n_components == graph["meta"]["n_components"]
        assert manifest.n_edges_full >= manifest.n_edges_retained
        # every edge's chart id resolves, and vice versa
        edge_charts = {e["chart"] for e in graph["edges"]}
        assert edge_charts == set(charts.keys())
        for entry in charts.values():
            expected = {
                (FeatureKind.DISCRETE, FeatureKind.DISCRETE): "heatmap",
                (FeatureKind.CONTINUOUS, FeatureKind.CONTINUOUS): "density_scatter",
            }
            kinds = tuple(
                FeatureKind(next(n["kind"] for n in graph["nodes"] if n["name"] == name))
                for name in (entry["x_feature"], entry["y_feature"])
            )
            assert entry["type"] == expected.get(tuple(sorted(kinds, key=lambda k: k.value)), "ridgeline")

    def test_byte_identical_reruns(self, demo_csv, tmp_path):
        out = tmp_path / "out"
        config = PipelineConfig(str(demo_csv), str(out), seed=5)
        run_pipeline(config)
        first = read_artifacts(out)
        run_pipeline(PipelineConfig(str(demo_csv), str(out), seed=5))
        assert read_artifacts(out) == first

    def test_artifact_round_trip(self, demo_csv, tmp_path):
        out = tmp_path / "out"
        graph, charts, _ = run_pipeline(PipelineConfig(str(demo_csv), str(out)))
        assert json.loads((out / GRAPH_FILENAME).read_text()) == graph
        assert json.loads((out / CHARTS_FILENAME).read_text()) == charts

    def test_no_charts_flag(self, demo_csv, tmp_path):
        out = tmp_path / "out"
        run_pipeline(PipelineConfig(str(demo_csv), str(out), emit_charts=False))
        assert (out / GRAPH_FILENAME).is_file()
        assert not (out / CHARTS_FILENAME).exists()

    def test_null_policy_applied(self, demo_csv, tmp_path):
        out = tmp_path / "out"
        config = PipelineConfig(
            str(demo_csv), str(out), null_policy=NullPolicy.NULL_CATEGORY
        )
        graph, charts, manifest = run_pipeline(config)
        assert manifest.config["null_policy"] == "null-category"

    def test_alpha_override_skips_sweep(self, demo_csv, tmp_path):
        out = tmp_path / "out"
        graph, _, manifest = run_pipeline(
            PipelineConfig(str(demo_csv), str(out), alpha_override=1.0)
        )
        assert graph["meta"]["alpha"] == 1.0
        assert manifest.n_edges_retained == manifest.n_edges_full

    def test_config_validation(self, demo_csv, tmp_path):
        bad = [
            {"discrete_threshold": 1},
            {"k_neighbors": 0},
            {"alpha_override": 1.5},
            {"layout_iterations": 0},
            {"max_scatter_points": 0},
            {"delimiter": ",,"},
        ]
        for kwargs in bad:
            with pytest.raises(ConfigError):
                PipelineConfig(str(demo_csv), str(tmp_path), **kwargs).validate()

    def test_all_null_column_isolated_and_flagged(self, tmp_path):
        rng = np.random.default_rng(21)
        lines = ["empty_col,a,b"]
        for _ in range(80):
            lines.append(f",{rng.standard_normal():.5f},{rng.standard_normal():.5f}")
        path = tmp_path / "withnull.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        graph, _, manifest = run_pipeline(
            PipelineConfig(str(path), str(tmp_path / "out"), emit_charts=False)
        )
        assert "all-null column: empty_col" in manifest.warnings
        node = next(n for n in graph["nodes"] if n["name"] == "empty_col")
        assert node["degree"] == 0
        assert all(node["id"] not in (e["source"], e["target"]) for e in graph["edges"])

    def test_manifest_edge_count_at_healthcare_width(self, tmp_path):
        # 186 discrete features over few records: every pair gets a positive
        # plug-in estimate, so the full edge list is the whole triangle
        rng = np.random.default_rng(206)
        header = ",".join(f"f{i}" for i in range(186))
        rows = "\n".join(
            ",".join(rng.choice(["a", "b", "c"]) for _ in range(186)) for _ in range(40)
        )
        path = tmp_path / "wide.csv"
        path.write_text(header + "\n" + rows + "\n", encoding="utf-8")
        out = tmp_path / "out"
        _, _, manifest = run_pipeline(
            PipelineConfig(str(path), str(out), emit_charts=False, layout_iterations=1)
        )
        assert manifest.n_features == 186
        assert manifest.n_edges_full == 17205


class TestExportGraph:
    def build(self, matrix, names=None, kinds=None):
        scored = score_edges(build_edge_list(matrix))
        bb = sweep_alpha(scored)
        n = matrix.shape[0]
        names = names or [f"f{i}" for i in range(n)]
        kinds = kinds or [FeatureKind.CONTINUOUS] * n
        table = FeatureTable(
            [
                FeatureColumn(names[i], [float(i), float(i) + 1.0], kinds[i])
                for i in range(n)
            ]
        )
        layout = fruchterman_reingold(bb, iterations=5, seed=0)
        config = PipelineConfig("in.csv", "out")
        return export_graph(bb, layout, table, config)

    def test_empty_backbone(self):
        artifact = self.build(np.zeros((3, 3)))
        assert len(artifact["nodes"]) == 3
        assert artifact["edges"] == []
        assert artifact["meta"]["n_components"] == 0

    def test_two_node_edge(self):
        m = np.array([[0.0, 1.0], [1.0, 0.0]])
        artifact = self.build(m)
        assert len(artifact["edges"]) == 1
        edge = artifact["edges"][0]
        assert edge["chart"] == "0_1"
        assert edge["weight"] == 1.0
        assert 0.0 <= edge["alpha"] <= 1.0

    def test_planted_clusters_component_count(self):
        rng = np.random.default_rng(3)
        n = 20
        m = rng.uniform(0.005, 0.02, (n, n))
        for b in range(5):
            hub = 4 * b
            for member in range(4 * b + 1, 4 * b + 4):
                m[hub, member] = m[member, hub] = rng.uniform(1.9, 2.1)
        m = np.triu(m, 1)
        m = m + m.T
        artifact = self.build(m)
        edges = [(e["source"], e["target"]) for e in artifact["edges"]]
        count, _ = oracles.bfs_components(n, edges)
        assert artifact["meta"]["n_components"] == count == 5

    def test_floats_are_nine_significant_digits(self):
        artifact = self.build(np.array([[0.0, 1 / 3], [1 / 3, 0.0]]))
        weight = artifact["edges"][0]["weight"]
        assert weight == float(f"{1 / 3:.9g}")


class TestExportCharts:
    def test_empty(self):
        assert export_charts([]) == {}

    def test_duplicate_id_guard(self):
        spec = ChartSpec("0_1", "heatmap", "a", "b", {"empty": True, "reason": "", "n": 0})
        with pytest.raises(RuntimeError):
            export_charts([spec, spec])

    def test_schema_instance(self):
        spec = ChartSpec(
            "0_3", "heatmap", "a", "b",
            {"x_categories": ["x"], "y_categories": ["y"], "counts": [[2]], "n": 2},
        )
        artifact = export_charts([spec])
        assert artifact == {
            "0_3": {
                "type": "heatmap",
                "x_feature": "a",
                "y_feature": "b",
                "payload": {
                    "x_categories": ["x"],
                    "y_categories": ["y"],
                    "counts": [[2]],
                    "n": 2,
                },
            }
        }


class TestCLI:
    def test_success_exit_zero(self, demo_csv, tmp_path, capsys):
        code = main(["--input", str(demo_csv), "--output-dir", str(tmp_path / "o"),
                     "--no-charts", "--layout-iterations", "5"])
        assert code == 0
        assert "edges retained" in capsys.readouterr().out

    def test_input_error_exit_one(self, tmp_path, capsys):
        code = main(["--input", str(tmp_path / "missing.csv"), "--output-dir", str(tmp_path)])
        assert code == 1
        err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert err["error"] == "input"

    def test_config_error_exit_two(self, demo_csv, tmp_path, capsys):
        code = main(["--input", str(demo_csv), "--output-dir", str(tmp_path),
                     "--alpha", "2.0"])
        assert code == 2
        err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert err["error"] == "config"

    def test_ragged_input_exit_one(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n3\n", encoding="utf-8")
        code = main(["--input", str(path), "--output-dir", str(tmp_path / "o")])
        assert code == 1
