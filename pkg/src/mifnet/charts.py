"""Record-level chart payloads for retained feature pairs.

The chart type is a pure function of the two feature kinds: two discrete
features tabulate into a heatmap, a mixed pair becomes a ridgeline of
per-category densities, and two continuous features produce a 2D kernel
density grid with a (possibly subsampled) scatter overlay.

Kernels are Gaussian with Silverman's rule-of-thumb bandwidth. Density
evaluation is plain vectorized kernel summation, numerically identical to
the obvious double loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ingest import FeatureKind
from .mi import PairSample

CHART_HEATMAP = "heatmap"
CHART_RIDGELINE = "ridgeline"
CHART_DENSITY_SCATTER = "density_scatter"

RIDGELINE_GRID_POINTS = 200
DENSITY_GRID_POINTS = 64
DEFAULT_MAX_SCATTER_POINTS = 2000

# Collapsed-category label used by the optional top-N cap.
OTHER_TOKEN = "OTHER"


class DegenerateInputError(ValueError):
    """Raised when a bandwidth or density is requested for zero-spread data."""


@dataclass
class ChartSpec:
    chart_id: str
    chart_type: str
    x_feature: str
    y_feature: str
    payload: dict


def chart_type_for(kind_u: FeatureKind, kind_v: FeatureKind) -> str:
    if kind_u is FeatureKind.DISCRETE and kind_v is FeatureKind.DISCRETE:
        return CHART_HEATMAP
    if kind_u is FeatureKind.CONTINUOUS and kind_v is FeatureKind.CONTINUOUS:
        return CHART_DENSITY_SCATTER
    return CHART_RIDGELINE


def _iqr(x: np.ndarray) -> float:
    """Interquartile range via averaged-inverse-CDF quantiles, so two points
    {0, 1} have IQR 1 rather than the 0.5 linear interpolation would give."""
    xs = np.sort(x)
    n = xs.size

    def quantile(q: float) -> float:
        h = n * q
        if h == int(h):
            i = int(h)
            if 0 < i < n:
                return 0.5 * (xs[i - 1] + xs[i])
        return float(xs[min(n - 1, math.ceil(h) - 1)])

    return quantile(0.75) - quantile(0.25)


def silverman_bandwidth(x) -> float:
    """0.9 * min(sample std, IQR/1.34) * n^(-1/5); IQR of 0 falls back to
    the std alone. Constant or single-value input has no bandwidth."""
    arr = np.asarray(x, dtype=float)
    if arr.size < 2 or np.all(arr == arr[0]):
        raise DegenerateInputError("bandwidth needs at least two distinct values")
    sd = float(np.std(arr, ddof=1))
    iqr = _iqr(arr)
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    return 0.9 * spread * arr.size ** (-0.2)


def gaussian_kde_1d(values: np.ndarray, bandwidth: float, grid: np.ndarray) -> np.ndarray:
    z = (grid[:, None] - values[None, :]) / bandwidth
    norm = 1.0 / (values.size * bandwidth * math.sqrt(2.0 * math.pi))
    return norm * np.exp(-0.5 * z * z).sum(axis=1)


def gaussian_kde_2d(xv, yv, bw_x, bw_y, grid_x, grid_y) -> np.ndarray:
    """Product-Gaussian KDE on the grid; entry [i, j] is at (grid_x[i], grid_y[j])."""
    kx = np.exp(-0.5 * ((grid_x[:, None] - xv[None, :]) / bw_x) ** 2)
    ky = np.exp(-0.5 * ((grid_y[:, None] - yv[None, :]) / bw_y) ** 2)
    norm = 1.0 / (xv.size * bw_x * bw_y * 2.0 * math.pi)
    return norm * (kx @ ky.T)


def _empty_payload(reason: str) -> dict:
    return {"empty": True, "reason": reason, "n": 0}


def _ordered_categories(tokens: np.ndarray) -> list[str]:
    """Distinct tokens by descending frequency, ties broken lexically."""
    cats, counts = np.unique(tokens, return_counts=True)
    order = sorted(range(cats.size), key=lambda i: (-counts[i], cats[i]))
    return [str(cats[i]) for i in order]


def _cap_categories(tokens: np.ndarray, max_categories: int | None) -> np.ndarray:
    """Collapse all but the top max_categories-1 tokens into OTHER.

    Off by default; a safety valve for pathological cardinality, so charts
    with hundreds of categories stay renderable when a caller opts in.
    """
    if max_categories is None:
        return tokens
    if max_categories < 2:
        raise ValueError("max_categories must be >= 2")
    ordered = _ordered_categories(tokens)
    if len(ordered) <= max_categories:
        return tokens
    keep = set(ordered[: max_categories - 1])
    return np.array(
        [t if str(t) in keep else OTHER_TOKEN for t in tokens], dtype=object
    )


def heatmap_spec(
    s: PairSample,
    chart_id: str = "",
    x_feature: str = "",
    y_feature: str = "",
    max_categories: int | None = None,
) -> ChartSpec:
    """Joint co-occurrence counts of two discrete features."""
    if s.n == 0:
        return ChartSpec(
            chart_id, CHART_HEATMAP, x_feature, y_feature,
            _empty_payload("no overlapping records"),
        )
    u = _cap_categories(np.asarray(s.u_values), max_categories)
    v = _cap_categories(np.asarray(s.v_values), max_categories)
    x_cats = _ordered_categories(u)
    y_cats = _ordered_categories(v)
    x_index = {c: i for i, c in enumerate(x_cats)}
    y_index = {c: i for i, c in enumerate(y_cats)}
    counts = np.zeros((len(x_cats), len(y_cats)), dtype=np.int64)
    for a, b in zip(u, v):
        counts[x_index[str(a)], y_index[str(b)]] += 1
    payload = {
        "x_categories": x_cats,
        "y_categories": y_cats,
        "counts": counts.tolist(),
        "n": s.n,
    }
    return ChartSpec(chart_id, CHART_HEATMAP, x_feature, y_feature, payload)


def ridgeline_spec(
    labels,
    values,
    chart_id: str = "",
    x_feature: str = "",
    y_feature: str = "",
    grid_points: int = RIDGELINE_GRID_POINTS,
    max_categories: int | None = None,
) -> ChartSpec:
    """Per-category densities of a continuous feature on one shared grid.

    The grid spans the data range padded by the global bandwidth; each
    category gets its own bandwidth. Categories without two distinct values
    degrade to a point-mass marker instead of a density row.
    """
    labels = _cap_categories(np.asarray(labels), max_categories)
    values = np.asarray(values, dtype=float)
    n = values.size
    if n == 0:
        return ChartSpec(
            chart_id, CHART_RIDGELINE, x_feature, y_feature,
            _empty_payload("no overlapping records"),
        )
    try:
        global_bw = silverman_bandwidth(values)
    except DegenerateInputError:
        return ChartSpec(
            chart_id, CHART_RIDGELINE, x_feature, y_feature,
            _empty_payload("continuous feature is constant over the pair"),
        )
    grid = np.linspace(values.min() - global_bw, values.max() + global_bw, grid_points)

    categories = _ordered_categories(labels)
    counts, densities, point_masses = [], [], []
    any_density = False
    for cat in categories:
        member_values = values[labels.astype(str) == cat]
        counts.append(int(member_values.size))
        try:
            bw = silverman_bandwidth(member_values)
        except DegenerateInputError:
            densities.append(None)
            point_masses.append(float(member_values[0]))
            continue
        densities.append(gaussian_kde_1d(member_values, bw, grid).tolist())
        point_masses.append(None)
        any_density = True
    if not any_density:
        return ChartSpec(
            chart_id, CHART_RIDGELINE, x_feature, y_feature,
            _empty_payload("every category is degenerate"),
        )
    payload = {
        "grid": grid.tolist(),
        "categories": categories,
        "counts": counts,
        "densities": densities,
        "point_masses": point_masses,
        "n": n,
    }
    return ChartSpec(chart_id, CHART_RIDGELINE, x_feature, y_feature, payload)


def kde2d_spec(
    s: PairSample,
    max_scatter_points: int = DEFAULT_MAX_SCATTER_POINTS,
    seed: int = 0,
    chart_id: str = "",
    x_feature: str = "",
    y_feature: str = "",
    grid_points: int = DENSITY_GRID_POINTS,
) -> ChartSpec:
    """2D kernel density over the padded bounding box plus scatter points.

    The grid spans the bounding box padded by three bandwidths per side,
    enough that even a handful of points keeps the cell-sum integral within
    1e-2 of unity. The scatter overlay is the full sample up to the cap,
    otherwise a seeded uniform subsample of exactly the cap, kept in record
    order.
    """
    x = np.asarray(s.u_values, dtype=float)
    y = np.asarray(s.v_values, dtype=float)
    n = s.n
    if n == 0:
        return ChartSpec(
            chart_id, CHART_DENSITY_SCATTER, x_feature, y_feature,
            _empty_payload("no overlapping records"),
        )
    try:
        bw_x = silverman_bandwidth(x)
        bw_y = silverman_bandwidth(y)
    except DegenerateInputError:
        return ChartSpec(
            chart_id, CHART_DENSITY_SCATTER, x_feature, y_feature,
            _empty_payload("one axis is constant over the pair"),
        )
    grid_x = np.linspace(x.min() - 3 * bw_x, x.max() + 3 * bw_x, grid_points)
    grid_y = np.linspace(y.min() - 3 * bw_y, y.max() + 3 * bw_y, grid_points)
    density = gaussian_kde_2d(x, y, bw_x, bw_y, grid_x, grid_y)

    if n <= max_scatter_points:
        chosen = np.arange(n)
    else:
        rng = np.random.default_rng(seed)
        chosen = np.sort(rng.choice(n, size=max_scatter_points, replace=False))
    points = [[float(x[i]), float(y[i])] for i in chosen]
    payload = {
        "grid_x": grid_x.tolist(),
        "grid_y": grid_y.tolist(),
        "density": density.tolist(),
        "points": points,
        "n_total": n,
    }
    return ChartSpec(chart_id, CHART_DENSITY_SCATTER, x_feature, y_feature, payload)
