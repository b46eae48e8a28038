"""Seeded Fruchterman-Reingold layout of the backbone graph.

Classic force-directed iteration in the fixed frame [-1, 1]^2: repulsion
d^2/dist between every pair of connected nodes, attraction dist^2/d along
edges scaled by weight relative to the strongest retained edge, and a linear
cooling schedule capping per-step displacement. Everything is driven by one
seed so identical inputs give bit-identical coordinates; different seeds may
give mirrored or rotated but equally valid embeddings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backbone import BackboneGraph

DEFAULT_ITERATIONS = 100

_FRAME_HALF = 1.0          # layout frame is [-1, 1]^2
_START_TEMPERATURE = 0.2   # a tenth of the frame width
_ISOLATED_RING_RADIUS = 0.95


@dataclass
class LayoutPositions:
    """Per-node (x, y) coordinates inside the layout frame."""

    coords: np.ndarray
    seed: int
    iterations: int


def _fr_step(positions, edge_u, edge_v, edge_scale, d_opt, temperature):
    """One displacement step; every node moves at most `temperature`."""
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=-1))
    np.fill_diagonal(dist, np.inf)
    dist = np.maximum(dist, 1e-12)
    force = ((d_opt * d_opt / dist)[:, :, None] * diff / dist[:, :, None]).sum(axis=1)

    if edge_u.size:
        delta = positions[edge_u] - positions[edge_v]
        edist = np.maximum(np.sqrt((delta**2).sum(axis=-1)), 1e-12)
        # magnitude dist^2/d_opt scaled by relative weight, along the edge
        pull = delta * ((edist / d_opt) * edge_scale)[:, None]
        np.add.at(force, edge_u, -pull)
        np.add.at(force, edge_v, pull)

    magnitude = np.sqrt((force**2).sum(axis=-1))
    step = np.minimum(magnitude, temperature) / np.maximum(magnitude, 1e-12)
    moved = positions + force * step[:, None]
    np.clip(moved, -_FRAME_HALF, _FRAME_HALF, out=moved)
    return moved


def fruchterman_reingold(
    g: BackboneGraph, iterations: int = DEFAULT_ITERATIONS, seed: int = 0
) -> LayoutPositions:
    """Lay out the backbone; returns coordinates for every node.

    Nodes with at least one retained edge take part in the simulation (all
    components share the frame, drifting apart through repulsion). When the
    graph has edges, isolated nodes sit on a fixed peripheral ring instead;
    an entirely edgeless graph is simulated as pure repulsion, so a single
    node simply keeps its seeded initial draw.
    """
    n = g.base.n_nodes
    if n < 1:
        raise ValueError("layout requires at least one node")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")

    rng = np.random.default_rng(seed)
    coords = rng.uniform(-_FRAME_HALF, _FRAME_HALF, size=(n, 2))

    edges = g.base.edges
    if edges:
        sim_nodes = np.where(g.base.degrees > 0)[0]
        isolated = np.where(g.base.degrees == 0)[0]
        for slot, node in enumerate(isolated):
            angle = 2.0 * math.pi * slot / isolated.size
            coords[node] = (
                _ISOLATED_RING_RADIUS * math.cos(angle),
                _ISOLATED_RING_RADIUS * math.sin(angle),
            )
    else:
        sim_nodes = np.arange(n)

    local = {node: i for i, node in enumerate(sim_nodes)}
    edge_u = np.array([local[e.u] for e in edges], dtype=np.int64)
    edge_v = np.array([local[e.v] for e in edges], dtype=np.int64)
    weights = np.array([e.weight for e in edges], dtype=float)
    edge_scale = weights / weights.max() if edges else weights

    d_opt = math.sqrt(4.0 / n)  # frame area 4 shared across all nodes
    positions = coords[sim_nodes]
    for i in range(iterations):
        temperature = _START_TEMPERATURE * (iterations - i) / iterations
        positions = _fr_step(positions, edge_u, edge_v, edge_scale, d_opt, temperature)
    coords[sim_nodes] = positions
    return LayoutPositions(coords, seed, iterations)
