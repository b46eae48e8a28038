/**
 * View state over validated artifacts: camera, feature selection, active
 * edge. Pure bookkeeping; every displayed number originates in the
 * artifacts.
 */

import type { ChartEntry, ChartsArtifact, GraphArtifact, GraphNode } from "./schema.js";
import { Camera, freshCamera, MAX_ZOOM, MIN_ZOOM } from "./scales.js";

export interface Highlight {
  nodes: Set<number>;
  edges: Set<number>;
}

export class ViewState {
  readonly graph: GraphArtifact;
  readonly charts: ChartsArtifact;
  camera: Camera = freshCamera();
  chartCamera: Camera = freshCamera();
  selected: Set<number> = new Set();
  activeEdge: number | null = null;
  readonly maxWeight: number;

  private incident: Map<number, number[]> = new Map();

  constructor(graph: GraphArtifact, charts: ChartsArtifact) {
    this.graph = graph;
    this.charts = charts;
    this.maxWeight = graph.edges.reduce((best, e) => Math.max(best, e.weight), 0);
    graph.edges.forEach((edge, index) => {
      for (const end of [edge.source, edge.target]) {
        const list = this.incident.get(end) ?? [];
        list.push(index);
        this.incident.set(end, list);
      }
    });
  }

  /** Case-insensitive substring match over feature names; "" lists all. */
  filterFeatures(query: string): GraphNode[] {
    const needle = query.toLowerCase();
    return this.graph.nodes.filter((n) => n.name.toLowerCase().includes(needle));
  }

  selectFeature(id: number | null, additive = false): void {
    if (id === null) {
      this.selected = new Set();
      return;
    }
    if (additive) {
      if (this.selected.has(id)) this.selected.delete(id);
      else this.selected.add(id);
    } else {
      this.selected = new Set([id]);
    }
  }

  /** Selected nodes and their incident edge indices; empty sets = no dimming. */
  highlight(): Highlight {
    const nodes = new Set(this.selected);
    const edges = new Set<number>();
    for (const id of this.selected) {
      for (const index of this.incident.get(id) ?? []) edges.add(index);
    }
    return { nodes, edges };
  }

  /** Mark the edge active and return its chart entry. */
  selectEdge(index: number): ChartEntry {
    const edge = this.graph.edges[index];
    if (edge === undefined) throw new Error(`no edge at index ${index}`);
    this.activeEdge = index;
    this.chartCamera = freshCamera();
    return this.charts[edge.chart];
  }

  clearEdge(): void {
    this.activeEdge = null;
  }

  clampZoom(): void {
    this.camera.zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, this.camera.zoom));
  }
}
