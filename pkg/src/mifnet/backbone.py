"""Backbone extraction for the weighted feature graph.

Edge significance follows the disparity filter of Serrano, Boguna &
Vespignani (2009): each edge weight is normalized by its endpoint's strength
and scored against the null of uniformly split strength, alpha = (1-p)^(k-1)
for endpoint degree k >= 2. An edge is kept when it is significant from
either side (the smaller of the two directional alphas beats the threshold).

The retention threshold is not fixed a priori: a sweep over all candidate
thresholds picks the one maximizing the number of connected components among
non-isolated nodes, favoring the smallest threshold on ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


@dataclass
class MIEdge:
    """Feature pair (u < v) with its weight and disparity significance."""

    u: int
    v: int
    weight: float
    alpha_uv: float | None = None
    alpha_vu: float | None = None
    alpha: float | None = None


@dataclass
class WeightedFeatureGraph:
    """All positive-weight feature pairs plus per-node degree and strength."""

    n_nodes: int
    edges: list[MIEdge]
    degrees: np.ndarray
    strengths: np.ndarray


@dataclass
class BackboneGraph:
    """Sparsified graph: retained edges, chosen threshold, components."""

    base: WeightedFeatureGraph
    alpha_chosen: float
    n_components: int
    component_id: list[int | None]


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        """Merge the sets of i and j; True if they were distinct."""
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if self.size[ri] < self.size[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        self.size[ri] += self.size[rj]
        return True


def component_count(n_nodes: int, edges) -> tuple[int, list[int | None]]:
    """Union-find component labeling over (u, v) pairs.

    Isolated nodes get label None and do not count. Labels are numbered by
    first appearance in node order.
    """
    uf = UnionFind(n_nodes)
    touched = [False] * n_nodes
    for u, v in edges:
        uf.union(u, v)
        touched[u] = True
        touched[v] = True
    labels: list[int | None] = [None] * n_nodes
    root_to_label: dict[int, int] = {}
    for node in range(n_nodes):
        if not touched[node]:
            continue
        root = uf.find(node)
        if root not in root_to_label:
            root_to_label[root] = len(root_to_label)
        labels[node] = root_to_label[root]
    return len(root_to_label), labels


def build_edge_list(mi_matrix) -> WeightedFeatureGraph:
    """Upper-triangle edge list of a symmetric non-negative weight matrix.

    Zero-weight pairs are dropped immediately so they never contribute to
    degrees or strengths (the significance formula is degree-sensitive).
    """
    m = np.asarray(mi_matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"weight matrix must be square, got shape {m.shape}")
    n = m.shape[0]
    if n < 2:
        raise ValueError("need at least two features to build an edge list")
    if not np.array_equal(m, m.T):
        raise ValueError("weight matrix must be symmetric")
    if np.any(np.diag(m) != 0.0):
        raise ValueError("weight matrix must have a zero diagonal")
    if np.any(m < 0.0):
        raise ValueError("weights must be non-negative")

    edges = []
    degrees = np.zeros(n, dtype=np.int64)
    strengths = np.zeros(n, dtype=float)
    for u in range(n):
        row = m[u]
        for v in range(u + 1, n):
            w = row[v]
            if w > 0.0:
                edges.append(MIEdge(u, v, float(w)))
                degrees[u] += 1
                degrees[v] += 1
                strengths[u] += w
                strengths[v] += w
    return WeightedFeatureGraph(n, edges, degrees, strengths)


def disparity_alpha(p: float, k: int) -> float:
    """Closed-form edge significance: (1-p)^(k-1) for k >= 2, 1.0 for k = 1.

    p is the edge weight normalized by the endpoint's strength; a degree-1
    node always has p = 1 yet carries no evidence, hence alpha 1.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"normalized weight must lie in [0, 1], got {p}")
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    if k == 1:
        return 1.0
    return (1.0 - p) ** (k - 1)


def score_edges(g: WeightedFeatureGraph) -> WeightedFeatureGraph:
    """Attach both directional alphas and their minimum to every edge."""
    scored = []
    for e in g.edges:
        a_uv = disparity_alpha(e.weight / g.strengths[e.u], int(g.degrees[e.u]))
        a_vu = disparity_alpha(e.weight / g.strengths[e.v], int(g.degrees[e.v]))
        scored.append(replace(e, alpha_uv=a_uv, alpha_vu=a_vu, alpha=min(a_uv, a_vu)))
    return WeightedFeatureGraph(g.n_nodes, scored, g.degrees, g.strengths)


def _is_dyad(e: MIEdge, degrees: np.ndarray) -> bool:
    # An isolated two-node pair: alpha is 1 from both sides by the k=1 rule,
    # so thresholding would always delete it. Such dyads are always kept.
    return degrees[e.u] == 1 and degrees[e.v] == 1


def _retained(g: WeightedFeatureGraph, threshold: float) -> list[MIEdge]:
    return [e for e in g.edges if e.alpha < threshold or _is_dyad(e, g.degrees)]


def _build_backbone(g: WeightedFeatureGraph, threshold: float) -> BackboneGraph:
    retained = _retained(g, threshold)
    degrees = np.zeros(g.n_nodes, dtype=np.int64)
    strengths = np.zeros(g.n_nodes, dtype=float)
    for e in retained:
        degrees[e.u] += 1
        degrees[e.v] += 1
        strengths[e.u] += e.weight
        strengths[e.v] += e.weight
    base = WeightedFeatureGraph(g.n_nodes, retained, degrees, strengths)
    count, labels = component_count(g.n_nodes, [(e.u, e.v) for e in retained])
    return BackboneGraph(base, threshold, count, labels)


def sparsify(g: WeightedFeatureGraph, alpha: float) -> BackboneGraph:
    """Keep edges whose min-side alpha is strictly below the threshold
    (plus always-kept isolated dyads) and recount components."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha threshold must lie in [0, 1], got {alpha}")
    _check_scored(g)
    return _build_backbone(g, alpha)


def candidate_thresholds(alphas) -> list[float]:
    """Candidate thresholds from the sorted distinct alphas.

    One candidate sits below the minimum (admits nothing), then each distinct
    alpha is bumped up by half the gap to the next so every candidate admits
    a distinct edge set; the last uses a virtual unit gap.
    """
    distinct = sorted(set(alphas))
    if not distinct:
        return []
    candidates = [distinct[0] / 2.0]
    for a, b in zip(distinct, distinct[1:]):
        candidates.append(a + (b - a) / 2.0)
    candidates.append(distinct[-1] + 0.5)
    return candidates


def sweep_alpha(g: WeightedFeatureGraph) -> BackboneGraph:
    """Pick the threshold maximizing the component count.

    Components are counted over nodes with at least one retained edge.
    Ties go to the smallest threshold, i.e. the sparsest maximizer. Runs
    incrementally: retained sets grow with the threshold, so edges are
    union-found in ascending alpha order.
    """
    _check_scored(g)
    if not g.edges:
        return BackboneGraph(
            WeightedFeatureGraph(g.n_nodes, [], np.zeros(g.n_nodes, dtype=np.int64), np.zeros(g.n_nodes)),
            0.0,
            0,
            [None] * g.n_nodes,
        )

    candidates = candidate_thresholds(e.alpha for e in g.edges)
    ordered = sorted(g.edges, key=lambda e: e.alpha)

    uf = UnionFind(g.n_nodes)
    active = [False] * g.n_nodes
    n_active = 0
    n_merges = 0

    def absorb(edge: MIEdge):
        nonlocal n_active, n_merges
        for node in (edge.u, edge.v):
            if not active[node]:
                active[node] = True
                n_active += 1
        if uf.union(edge.u, edge.v):
            n_merges += 1

    # Isolated dyads are kept at every threshold, including the lowest.
    for e in ordered:
        if _is_dyad(e, g.degrees):
            absorb(e)

    best_threshold = candidates[0]
    best_count = n_active - n_merges
    pos = 0
    for threshold in candidates[1:]:
        while pos < len(ordered) and ordered[pos].alpha < threshold:
            absorb(ordered[pos])
            pos += 1
        count = n_active - n_merges
        if count > best_count:
            best_count = count
            best_threshold = threshold
    return _build_backbone(g, best_threshold)


def _check_scored(g: WeightedFeatureGraph):
    if any(e.alpha is None for e in g.edges):
        raise ValueError("edges must be scored (run score_edges) first")
