"""Regenerate the frontend test fixtures from a real pipeline run.

Runs the planted-structure table through the pipeline, then keeps a small
cross-referenced subset of edges (a few per chart type) so the committed
fixtures stay light while remaining genuine artifacts.

Usage: python3 frontend/scripts/make_fixtures.py
"""

import json
import sys
import tempfile
from pathlib import Path

from mifnet.pipeline import PipelineConfig, run_pipeline
from mifnet.synthetic import write_planted_csv

PER_TYPE = 3
OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "__fixtures__"


def main():
    with tempfile.TemporaryDirectory() as td:
        csv_path = Path(td) / "planted.csv"
        write_planted_csv(csv_path, n_records=300, seed=15)
        # alpha 1.0 retains every positive edge, so all chart types appear
        graph, charts, _ = run_pipeline(
            PipelineConfig(
                str(csv_path), td + "/out",
                max_scatter_points=60, seed=0, alpha_override=1.0,
            )
        )

    kept_edges, seen = [], {}
    for edge in graph["edges"]:
        kind = charts[edge["chart"]]["type"]
        if seen.get(kind, 0) < PER_TYPE:
            seen[kind] = seen.get(kind, 0) + 1
            kept_edges.append(edge)
    graph["edges"] = kept_edges
    charts = {e["chart"]: charts[e["chart"]] for e in kept_edges}
    if len(seen) < 3:
        sys.exit(f"fixture run only produced chart types {sorted(seen)}")

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    (OUT_DIR / "graph.json").write_text(json.dumps(graph, sort_keys=True) + "\n")
    (OUT_DIR / "charts.json").write_text(json.dumps(charts, sort_keys=True) + "\n")
    print(f"wrote {OUT_DIR}/graph.json and charts.json "
          f"({len(kept_edges)} edges: {seen})")


if __name__ == "__main__":
    main()
