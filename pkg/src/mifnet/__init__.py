"""Mutual-information feature networks for mixed-type tabular data.

Pipeline: ingest a delimited table, classify features as discrete or
continuous, score every feature pair by mutual information, keep the
statistically significant backbone, lay it out, and export graph/charts
JSON consumed by the bundled explorer UI.
"""

from .backbone import (
    BackboneGraph,
    MIEdge,
    WeightedFeatureGraph,
    build_edge_list,
    component_count,
    disparity_alpha,
    score_edges,
    sparsify,
    sweep_alpha,
)
from .charts import (
    ChartSpec,
    chart_type_for,
    heatmap_spec,
    kde2d_spec,
    ridgeline_spec,
    silverman_bandwidth,
)
from .ingest import (
    FeatureColumn,
    FeatureKind,
    FeatureTable,
    NullPolicy,
    TableError,
    apply_null_policy,
    classify_feature,
    classify_table,
    load_table,
)
from .layout import LayoutPositions, fruchterman_reingold
from .mi import (
    MIConfig,
    MIResult,
    PairSample,
    digamma,
    mi_continuous_continuous,
    mi_discrete_continuous,
    mi_discrete_discrete,
    mutual_information,
    pairwise_complete,
)
from .pipeline import ConfigError, PipelineConfig, RunManifest, run_pipeline

__version__ = "0.1.0"
