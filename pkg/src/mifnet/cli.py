"""Command-line entry point.

Exit codes: 0 on success, 1 for input-table errors, 2 for configuration
errors. Hard failures emit one machine-readable JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .ingest import NullPolicy, TableError
from .pipeline import ConfigError, PipelineConfig, run_pipeline


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mifnet",
        description=(
            "Score all feature pairs of a delimited table by mutual "
            "information, extract the significant backbone network and export "
            "graph/charts JSON for the explorer UI."
        ),
    )
    p.add_argument("--input", required=True, help="delimited input file with a header row")
    p.add_argument("--output-dir", required=True, help="directory for the JSON artifacts")
    p.add_argument("--discrete-threshold", type=int, default=10,
                   help="unique-response count below which a feature is discrete")
    p.add_argument("--k-neighbors", type=int, default=3,
                   help="neighbor count for the k-NN estimators")
    p.add_argument("--alpha", type=float, default=None,
                   help="fixed significance threshold; skips the component sweep")
    p.add_argument("--null-policy", default="drop-pairwise",
                   choices=[policy.value for policy in NullPolicy],
                   help="how nulls are handled before estimation")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomized steps")
    p.add_argument("--layout-iterations", type=int, default=100)
    p.add_argument("--max-scatter-points", type=int, default=2000,
                   help="scatter overlay cap for density charts")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-charts", action="store_true", help="skip the charts artifact")
    return p


def error_line(kind: str, exc: Exception):
    print(json.dumps({"error": kind, "message": str(exc)}), file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = PipelineConfig(
            input_path=args.input,
            output_dir=args.output_dir,
            discrete_threshold=args.discrete_threshold,
            k_neighbors=args.k_neighbors,
            alpha_override=args.alpha,
            null_policy=NullPolicy(args.null_policy),
            seed=args.seed,
            layout_iterations=args.layout_iterations,
            max_scatter_points=args.max_scatter_points,
            delimiter=args.delimiter,
            emit_charts=not args.no_charts,
        )
        config.validate()
    except (ConfigError, ValueError) as exc:
        error_line("config", exc)
        return 2
    try:
        _, _, manifest = run_pipeline(config)
    except TableError as exc:
        error_line("input", exc)
        return 1
    print(
        f"wrote {args.output_dir}: {manifest.n_edges_retained} edges retained "
        f"of {manifest.n_edges_full}, {manifest.n_components} components "
        f"at alpha {manifest.alpha_chosen}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
