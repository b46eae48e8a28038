"""End-to-end run: ingest -> classify -> pairwise MI -> backbone -> layout
-> charts -> JSON artifacts.

Artifacts are written with sorted keys, 9-significant-digit floats and a
trailing newline, so a fixed (config, seed) reproduces byte-identical files.
Stage wall times are logged, not serialized, to keep that guarantee.

Graph artifact schema (field names are the UI contract):

    {"meta": {"n_features", "n_records", "alpha", "n_components",
              "discrete_threshold", "k_neighbors", "seed"},
     "nodes": [{"id", "name", "kind", "degree", "x", "y"}, ...],
     "edges": [{"source", "target", "weight", "alpha", "chart"}, ...]}

Charts artifact: one object keyed by chart id ("<min-index>_<max-index>"),
each entry {"type", "x_feature", "y_feature", "payload"}. For ridgelines
x_feature is the continuous side; otherwise x is the lower-index feature.
"""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import backbone as bb
from . import charts as ch
from .ingest import (
    DEFAULT_DISCRETE_THRESHOLD,
    FeatureKind,
    FeatureTable,
    NullPolicy,
    NullPolicyError,
    TableError,
    apply_null_policy,
    classify_table,
    load_table,
)
from .layout import DEFAULT_ITERATIONS, LayoutPositions, fruchterman_reingold
from .mi import MIConfig, MIResult, mutual_information, pair_seed, pairwise_complete

logger = logging.getLogger(__name__)

GRAPH_FILENAME = "graph.json"
CHARTS_FILENAME = "charts.json"
MANIFEST_FILENAME = "manifest.json"


class ConfigError(Exception):
    """Invalid pipeline configuration."""


@dataclass
class PipelineConfig:
    input_path: str
    output_dir: str
    discrete_threshold: int = DEFAULT_DISCRETE_THRESHOLD
    k_neighbors: int = 3
    alpha_override: float | None = None
    null_policy: NullPolicy = NullPolicy.DROP_PAIRWISE
    seed: int = 0
    layout_iterations: int = DEFAULT_ITERATIONS
    max_scatter_points: int = ch.DEFAULT_MAX_SCATTER_POINTS
    delimiter: str = ","
    emit_charts: bool = True

    def validate(self):
        if self.discrete_threshold < 2:
            raise ConfigError("discrete-threshold must be >= 2")
        if self.k_neighbors < 1:
            raise ConfigError("k-neighbors must be >= 1")
        if self.layout_iterations < 1:
            raise ConfigError("layout-iterations must be >= 1")
        if self.max_scatter_points < 1:
            raise ConfigError("max-scatter-points must be >= 1")
        if self.alpha_override is not None and not 0.0 <= self.alpha_override <= 1.0:
            raise ConfigError("alpha must lie in [0, 1]")
        if len(self.delimiter) != 1:
            raise ConfigError("delimiter must be a single character")

    def echo(self) -> dict:
        d = asdict(self)
        d["input_path"] = str(self.input_path)
        d["output_dir"] = str(self.output_dir)
        d["null_policy"] = self.null_policy.value
        return d


@dataclass
class RunManifest:
    config: dict
    n_features: int
    n_records: int
    n_edges_full: int
    n_edges_retained: int
    alpha_chosen: float
    n_components: int
    warnings: list[str]
    timings: dict = field(default_factory=dict)

    def to_artifact(self) -> dict:
        # timings are intentionally left out: they vary run to run while the
        # serialized manifest must not.
        return {
            "config": self.config,
            "n_features": self.n_features,
            "n_records": self.n_records,
            "n_edges_full": self.n_edges_full,
            "n_edges_retained": self.n_edges_retained,
            "alpha_chosen": self.alpha_chosen,
            "n_components": self.n_components,
            "warnings": self.warnings,
        }


def _quantize(obj):
    """Round every float to 9 significant digits, mapping numpy scalars and
    arrays to plain Python so the result serializes deterministically."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            raise ValueError("artifacts must not contain non-finite floats")
        return float(format(value, ".9g"))
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _quantize(obj.tolist())
    if isinstance(obj, dict):
        return {key: _quantize(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_quantize(value) for value in obj]
    raise TypeError(f"cannot serialize value of type {type(obj)!r}")


def write_json_artifact(obj: dict, path: Path):
    text = json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    path.write_text(text + "\n", encoding="utf-8")


def apply_table_null_policy(table: FeatureTable, policy: NullPolicy) -> FeatureTable:
    """Apply the run-level policy to every compatible column.

    Columns the policy cannot apply to (wrong kind, or all-null under a fill
    policy) silently stay on drop-pairwise; per-feature strictness is
    available through apply_null_policy directly.
    """
    if policy is NullPolicy.DROP_PAIRWISE:
        return table
    out = []
    for col in table.features:
        try:
            out.append(apply_null_policy(col, policy))
        except NullPolicyError:
            out.append(col)
    return FeatureTable(out)


def mi_matrix(table: FeatureTable, config: MIConfig):
    """Symmetric matrix of pairwise MI values plus any estimator flags."""
    n = table.n_features
    matrix = np.zeros((n, n), dtype=float)
    flags: list[str] = []
    for i in range(n):
        for j in range(i + 1, n):
            result = mutual_information(table.features[i], table.features[j], config)
            matrix[i, j] = matrix[j, i] = result.value
            if result.flag is not None:
                flags.append(
                    f"{result.flag}: {table.features[i].name} x {table.features[j].name}"
                )
    return matrix, flags


def chart_id_for(u: int, v: int) -> str:
    return f"{min(u, v)}_{max(u, v)}"


def build_chart_specs(
    table: FeatureTable, graph: bb.BackboneGraph, config: PipelineConfig
) -> list[ch.ChartSpec]:
    """One chart per retained edge, typed by the endpoints' kinds."""
    specs = []
    for edge in graph.base.edges:
        u_col = table.features[edge.u]
        v_col = table.features[edge.v]
        cid = chart_id_for(edge.u, edge.v)
        kind = ch.chart_type_for(u_col.kind, v_col.kind)
        sample = pairwise_complete(u_col, v_col)
        if kind == ch.CHART_HEATMAP:
            specs.append(ch.heatmap_spec(sample, cid, u_col.name, v_col.name))
        elif kind == ch.CHART_DENSITY_SCATTER:
            specs.append(
                ch.kde2d_spec(
                    sample,
                    max_scatter_points=config.max_scatter_points,
                    seed=pair_seed(config.seed, u_col.name, v_col.name),
                    chart_id=cid,
                    x_feature=u_col.name,
                    y_feature=v_col.name,
                )
            )
        else:
            disc, cont = (u_col, v_col) if u_col.kind is FeatureKind.DISCRETE else (v_col, u_col)
            mixed = pairwise_complete(disc, cont)
            specs.append(
                ch.ridgeline_spec(
                    mixed.u_values,
                    mixed.v_values,
                    chart_id=cid,
                    x_feature=cont.name,
                    y_feature=disc.name,
                )
            )
    return specs


def export_graph(
    graph: bb.BackboneGraph,
    positions: LayoutPositions,
    table: FeatureTable,
    config: PipelineConfig,
) -> dict:
    nodes = [
        {
            "id": i,
            "name": col.name,
            "kind": col.kind.value,
            "degree": int(graph.base.degrees[i]),
            "x": positions.coords[i, 0],
            "y": positions.coords[i, 1],
        }
        for i, col in enumerate(table.features)
    ]
    edges = [
        {
            "source": e.u,
            "target": e.v,
            "weight": e.weight,
            "alpha": e.alpha,
            "chart": chart_id_for(e.u, e.v),
        }
        for e in sorted(graph.base.edges, key=lambda e: (e.u, e.v))
    ]
    meta = {
        "n_features": table.n_features,
        "n_records": table.n_records,
        "alpha": graph.alpha_chosen,
        "n_components": graph.n_components,
        "discrete_threshold": config.discrete_threshold,
        "k_neighbors": config.k_neighbors,
        "seed": config.seed,
    }
    return _quantize({"meta": meta, "nodes": nodes, "edges": edges})


def export_charts(specs: list[ch.ChartSpec]) -> dict:
    out = {}
    for spec in specs:
        if spec.chart_id in out:
            raise RuntimeError(f"duplicate chart id {spec.chart_id!r}")
        out[spec.chart_id] = {
            "type": spec.chart_type,
            "x_feature": spec.x_feature,
            "y_feature": spec.y_feature,
            "payload": spec.payload,
        }
    return _quantize(out)


def run_pipeline(config: PipelineConfig):
    """Execute the full pipeline and write graph/charts/manifest artifacts.

    Returns (graph artifact, charts artifact, RunManifest). Ingest problems
    raise TableError; per-pair estimator issues become manifest warnings.
    """
    config.validate()
    timings: dict[str, float] = {}
    warnings: list[str] = []

    def stage(name):
        timings[name] = time.perf_counter()

    def done(name):
        timings[name] = time.perf_counter() - timings[name]
        logger.info("stage %s finished in %.3fs", name, timings[name])

    stage("ingest")
    table = load_table(config.input_path, delimiter=config.delimiter)
    if table.n_features < 2:
        raise TableError("need at least two features to build a network")
    done("ingest")

    stage("classify")
    table = classify_table(table, config.discrete_threshold)
    table = apply_table_null_policy(table, config.null_policy)
    warnings.extend(f"all-null column: {c.name}" for c in table.features if c.all_null)
    done("classify")

    stage("mi")
    matrix, flags = mi_matrix(table, MIConfig(config.k_neighbors, config.seed))
    warnings.extend(flags)
    done("mi")

    stage("backbone")
    full = bb.build_edge_list(matrix)
    scored = bb.score_edges(full)
    if config.alpha_override is not None:
        graph = bb.sparsify(scored, config.alpha_override)
    else:
        graph = bb.sweep_alpha(scored)
    done("backbone")

    stage("layout")
    positions = fruchterman_reingold(graph, config.layout_iterations, config.seed)
    done("layout")

    stage("charts")
    specs = build_chart_specs(table, graph, config) if config.emit_charts else []
    done("charts")

    stage("export")
    graph_artifact = export_graph(graph, positions, table, config)
    charts_artifact = export_charts(specs)
    manifest = RunManifest(
        config=config.echo(),
        n_features=table.n_features,
        n_records=table.n_records,
        n_edges_full=len(full.edges),
        n_edges_retained=len(graph.base.edges),
        alpha_chosen=float(format(graph.alpha_chosen, ".9g")),
        n_components=graph.n_components,
        warnings=sorted(set(warnings)),
        timings=timings,
    )
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_json_artifact(graph_artifact, out_dir / GRAPH_FILENAME)
    if config.emit_charts:
        write_json_artifact(charts_artifact, out_dir / CHARTS_FILENAME)
    write_json_artifact(_quantize(manifest.to_artifact()), out_dir / MANIFEST_FILENAME)
    done("export")
    return graph_artifact, charts_artifact, manifest
