/** Canvas renderer for the feature network. */

import { edgeWidth, nodeColor, worldToScreen } from "./scales.js";
import type { ScreenPoint } from "./hit.js";
import { ViewState } from "./state.js";

const NODE_RADIUS = 6;
const DIM = 0.12;

export function nodeScreenPositions(state: ViewState, width: number, height: number): ScreenPoint[] {
  return state.graph.nodes.map((n) => worldToScreen(state.camera, width, height, n.x, n.y));
}

export function edgeScreenSegments(
  state: ViewState,
  points: ScreenPoint[]
): [ScreenPoint, ScreenPoint][] {
  return state.graph.edges.map((e) => [points[e.source], points[e.target]]);
}

export function drawNetwork(
  ctx: CanvasRenderingContext2D,
  state: ViewState,
  width: number,
  height: number
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#10131a";
  ctx.fillRect(0, 0, width, height);

  const points = nodeScreenPositions(state, width, height);
  const highlight = state.highlight();
  const dimming = highlight.nodes.size > 0;

  state.graph.edges.forEach((edge, index) => {
    const a = points[edge.source];
    const b = points[edge.target];
    const lit = !dimming || highlight.edges.has(index);
    ctx.globalAlpha = lit ? 0.85 : DIM;
    ctx.strokeStyle = index === state.activeEdge ? "#f4a261" : "#7d8597";
    ctx.lineWidth = edgeWidth(edge.weight, state.maxWeight);
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  });

  const showLabels = state.graph.nodes.length <= 60 || state.camera.zoom >= 1.5;
  state.graph.nodes.forEach((node, id) => {
    const p = points[id];
    const lit = !dimming || highlight.nodes.has(id);
    ctx.globalAlpha = lit ? 1.0 : 0.35;
    ctx.beginPath();
    ctx.arc(p.x, p.y, NODE_RADIUS, 0, 2 * Math.PI);
    ctx.fillStyle = nodeColor(node.kind);
    ctx.fill();
    if (highlight.nodes.has(id)) {
      ctx.strokeStyle = "#f4f1de";
      ctx.lineWidth = 2;
      ctx.stroke();
    }
    if (showLabels) {
      ctx.fillStyle = lit ? "#dfe3ec" : "#565d6d";
      ctx.font = "11px system-ui, sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(node.name, p.x, p.y - NODE_RADIUS - 3);
    }
  });
  ctx.globalAlpha = 1.0;
}
