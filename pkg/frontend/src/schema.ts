/**
 * Artifact schemas and validation.
 *
 * The explorer renders numbers verbatim from the two JSON artifacts; it
 * computes no statistics of its own. Validation is strict and reports the
 * first failing field by path so the error banner can name it. Nothing is
 * rendered from artifacts that fail validation.
 */

export interface GraphMeta {
  n_features: number;
  n_records: number;
  alpha: number;
  n_components: number;
  discrete_threshold: number;
  k_neighbors: number;
  seed: number;
}

export type FeatureKind = "discrete" | "continuous";

export interface GraphNode {
  id: number;
  name: string;
  kind: FeatureKind;
  degree: number;
  x: number;
  y: number;
}

export interface GraphEdge {
  source: number;
  target: number;
  weight: number;
  alpha: number;
  chart: string;
}

export interface GraphArtifact {
  meta: GraphMeta;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export type ChartType = "heatmap" | "ridgeline" | "density_scatter";

export interface ChartEntry {
  type: ChartType;
  x_feature: string;
  y_feature: string;
  payload: Record<string, unknown>;
}

export type ChartsArtifact = Record<string, ChartEntry>;

export type ValidationResult =
  | { ok: true; graph: GraphArtifact; charts: ChartsArtifact }
  | { ok: false; error: string };

class Invalid extends Error {}

function need(condition: boolean, path: string, expected: string): void {
  if (!condition) throw new Invalid(`${path}: expected ${expected}`);
}

function asObject(value: unknown, path: string): Record<string, unknown> {
  need(typeof value === "object" && value !== null && !Array.isArray(value), path, "an object");
  return value as Record<string, unknown>;
}

function asArray(value: unknown, path: string): unknown[] {
  need(Array.isArray(value), path, "an array");
  return value as unknown[];
}

function asNumber(value: unknown, path: string): number {
  need(typeof value === "number" && Number.isFinite(value), path, "a finite number");
  return value as number;
}

function asString(value: unknown, path: string): string {
  need(typeof value === "string", path, "a string");
  return value as string;
}

const META_KEYS: (keyof GraphMeta)[] = [
  "n_features",
  "n_records",
  "alpha",
  "n_components",
  "discrete_threshold",
  "k_neighbors",
  "seed",
];

const CHART_TYPES = new Set(["heatmap", "ridgeline", "density_scatter"]);

function numberArray(value: unknown, path: string): void {
  for (const [i, item] of asArray(value, path).entries()) {
    asNumber(item, `${path}[${i}]`);
  }
}

function stringArray(value: unknown, path: string): void {
  for (const [i, item] of asArray(value, path).entries()) {
    asString(item, `${path}[${i}]`);
  }
}

function validatePayload(type: ChartType, raw: unknown, path: string): void {
  const payload = asObject(raw, path);
  if (payload.empty !== undefined) {
    need(payload.empty === true, `${path}.empty`, "true when present");
    asString(payload.reason, `${path}.reason`);
    return;
  }
  if (type === "heatmap") {
    stringArray(payload.x_categories, `${path}.x_categories`);
    stringArray(payload.y_categories, `${path}.y_categories`);
    const rows = asArray(payload.counts, `${path}.counts`);
    need(
      rows.length === (payload.x_categories as unknown[]).length,
      `${path}.counts`,
      "one row per x category"
    );
    for (const [i, row] of rows.entries()) {
      numberArray(row, `${path}.counts[${i}]`);
      need(
        (row as unknown[]).length === (payload.y_categories as unknown[]).length,
        `${path}.counts[${i}]`,
        "one cell per y category"
      );
    }
  } else if (type === "ridgeline") {
    numberArray(payload.grid, `${path}.grid`);
    stringArray(payload.categories, `${path}.categories`);
    numberArray(payload.counts, `${path}.counts`);
    const densities = asArray(payload.densities, `${path}.densities`);
    need(
      densities.length === (payload.categories as unknown[]).length,
      `${path}.densities`,
      "one row per category"
    );
    for (const [i, row] of densities.entries()) {
      if (row !== null) numberArray(row, `${path}.densities[${i}]`);
    }
  } else {
    numberArray(payload.grid_x, `${path}.grid_x`);
    numberArray(payload.grid_y, `${path}.grid_y`);
    const density = asArray(payload.density, `${path}.density`);
    for (const [i, row] of density.entries()) {
      numberArray(row, `${path}.density[${i}]`);
    }
    const points = asArray(payload.points, `${path}.points`);
    for (const [i, pt] of points.entries()) {
      numberArray(pt, `${path}.points[${i}]`);
      need((pt as unknown[]).length === 2, `${path}.points[${i}]`, "an [x, y] pair");
    }
  }
}

export function validateArtifacts(graphRaw: unknown, chartsRaw: unknown): ValidationResult {
  try {
    const graphObj = asObject(graphRaw, "graph");
    const meta = asObject(graphObj.meta, "graph.meta");
    for (const key of META_KEYS) {
      asNumber(meta[key], `graph.meta.${key}`);
    }

    const nodes = asArray(graphObj.nodes, "graph.nodes");
    need(nodes.length === meta.n_features, "graph.nodes", "meta.n_features entries");
    const seen = new Set<number>();
    for (const [i, raw] of nodes.entries()) {
      const node = asObject(raw, `graph.nodes[${i}]`);
      const id = asNumber(node.id, `graph.nodes[${i}].id`);
      need(!seen.has(id), `graph.nodes[${i}].id`, "a unique id");
      seen.add(id);
      need(id >= 0 && id < nodes.length, `graph.nodes[${i}].id`, "an id in range");
      asString(node.name, `graph.nodes[${i}].name`);
      need(
        node.kind === "discrete" || node.kind === "continuous",
        `graph.nodes[${i}].kind`,
        '"discrete" or "continuous"'
      );
      asNumber(node.degree, `graph.nodes[${i}].degree`);
      asNumber(node.x, `graph.nodes[${i}].x`);
      asNumber(node.y, `graph.nodes[${i}].y`);
    }

    const chartsObj = asObject(chartsRaw, "charts");
    for (const [id, raw] of Object.entries(chartsObj)) {
      const entry = asObject(raw, `charts[${id}]`);
      need(
        CHART_TYPES.has(entry.type as string),
        `charts[${id}].type`,
        "heatmap | ridgeline | density_scatter"
      );
      asString(entry.x_feature, `charts[${id}].x_feature`);
      asString(entry.y_feature, `charts[${id}].y_feature`);
      validatePayload(entry.type as ChartType, entry.payload, `charts[${id}].payload`);
    }

    const edges = asArray(graphObj.edges, "graph.edges");
    const referenced = new Set<string>();
    for (const [i, raw] of edges.entries()) {
      const edge = asObject(raw, `graph.edges[${i}]`);
      const source = asNumber(edge.source, `graph.edges[${i}].source`);
      const target = asNumber(edge.target, `graph.edges[${i}].target`);
      need(seen.has(source), `graph.edges[${i}].source`, "a known node id");
      need(seen.has(target), `graph.edges[${i}].target`, "a known node id");
      asNumber(edge.weight, `graph.edges[${i}].weight`);
      asNumber(edge.alpha, `graph.edges[${i}].alpha`);
      const chart = asString(edge.chart, `graph.edges[${i}].chart`);
      need(chart in chartsObj, `graph.edges[${i}].chart`, "a chart id present in the charts artifact");
      referenced.add(chart);
    }
    for (const id of Object.keys(chartsObj)) {
      need(referenced.has(id), `charts[${id}]`, "a chart referenced by some edge");
    }

    return {
      ok: true,
      graph: graphObj as unknown as GraphArtifact,
      charts: chartsObj as unknown as ChartsArtifact,
    };
  } catch (err) {
    if (err instanceof Invalid) return { ok: false, error: err.message };
    throw err;
  }
}
