/**
 * Canvas renderers for the three per-edge chart payloads. Each draws into a
 * unit box mapped through the chart panel's camera, so the panel pans and
 * zooms uniformly across chart types.
 */

import type { ChartEntry } from "./schema.js";
import { Camera, matrixMax, rampColor, worldToScreen } from "./scales.js";

interface Frame {
  toX(u: number): number;
  toY(v: number): number;
  ctx: CanvasRenderingContext2D;
}

/** Map the unit box [0,1]^2 (y up) through the camera into screen space. */
function makeFrame(
  ctx: CanvasRenderingContext2D,
  cam: Camera,
  width: number,
  height: number
): Frame {
  return {
    ctx,
    toX: (u) => worldToScreen(cam, width, height, (u - 0.5) * 1.6, 0).x,
    toY: (v) => worldToScreen(cam, width, height, 0, (0.5 - v) * 1.6).y,
  };
}

function drawAxisLabels(frame: Frame, xLabel: string, yLabel: string): void {
  const { ctx } = frame;
  ctx.fillStyle = "#aab2c4";
  ctx.font = "12px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.fillText(xLabel, frame.toX(0.5), frame.toY(-0.08));
  ctx.save();
  ctx.translate(frame.toX(-0.1), frame.toY(0.5));
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();
}

function formatTick(value: number): string {
  const magnitude = Math.abs(value);
  if (magnitude !== 0 && (magnitude >= 1e4 || magnitude < 1e-2)) return value.toExponential(1);
  return value.toFixed(2).replace(/\.?0+$/, "") || "0";
}

function heatmap(frame: Frame, payload: Record<string, unknown>): void {
  const xCats = payload.x_categories as string[];
  const yCats = payload.y_categories as string[];
  const counts = payload.counts as number[][];
  const top = matrixMax(counts) || 1;
  const { ctx } = frame;
  for (let i = 0; i < xCats.length; i++) {
    for (let j = 0; j < yCats.length; j++) {
      const x0 = frame.toX(i / xCats.length);
      const x1 = frame.toX((i + 1) / xCats.length);
      const y0 = frame.toY((j + 1) / yCats.length);
      const y1 = frame.toY(j / yCats.length);
      ctx.fillStyle = rampColor(counts[i][j] / top);
      ctx.fillRect(x0, y0, x1 - x0, y1 - y0);
    }
  }
  ctx.fillStyle = "#dfe3ec";
  ctx.font = "11px system-ui, sans-serif";
  ctx.textAlign = "center";
  for (let i = 0; i < xCats.length; i++) {
    ctx.fillText(xCats[i], frame.toX((i + 0.5) / xCats.length), frame.toY(-0.03));
  }
  ctx.textAlign = "right";
  for (let j = 0; j < yCats.length; j++) {
    ctx.fillText(yCats[j], frame.toX(-0.01), frame.toY((j + 0.5) / yCats.length));
  }
}

function ridgeline(frame: Frame, payload: Record<string, unknown>): void {
  const grid = payload.grid as number[];
  const categories = payload.categories as string[];
  const densities = payload.densities as (number[] | null)[];
  const pointMasses = payload.point_masses as (number | null)[];
  const counts = payload.counts as number[];
  const { ctx } = frame;

  const lo = grid[0];
  const span = grid[grid.length - 1] - lo || 1;
  const toU = (value: number) => (value - lo) / span;
  let peak = 0;
  for (const row of densities) {
    if (row) for (const v of row) if (v > peak) peak = v;
  }
  peak = peak || 1;

  const rows = categories.length;
  const rowHeight = 1 / rows;
  categories.forEach((cat, index) => {
    const base = 1 - (index + 1) * rowHeight;
    const row = densities[index];
    if (row) {
      ctx.beginPath();
      ctx.moveTo(frame.toX(toU(grid[0])), frame.toY(base));
      grid.forEach((g, k) => {
        ctx.lineTo(frame.toX(toU(g)), frame.toY(base + (row[k] / peak) * rowHeight * 1.5));
      });
      ctx.lineTo(frame.toX(toU(grid[grid.length - 1])), frame.toY(base));
      ctx.closePath();
      ctx.fillStyle = `rgba(42, 157, 143, 0.55)`;
      ctx.fill();
      ctx.strokeStyle = "#2a9d8f";
      ctx.stroke();
    } else {
      const mass = pointMasses[index];
      if (mass !== null) {
        const x = frame.toX(toU(mass));
        ctx.strokeStyle = "#f4a261";
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.moveTo(x, frame.toY(base));
        ctx.lineTo(x, frame.toY(base + rowHeight * 0.9));
        ctx.stroke();
        ctx.lineWidth = 1;
      }
    }
    ctx.fillStyle = "#dfe3ec";
    ctx.font = "11px system-ui, sans-serif";
    ctx.textAlign = "right";
    ctx.fillText(`${cat} (${counts[index]})`, frame.toX(-0.01), frame.toY(base + rowHeight / 2));
  });

  ctx.fillStyle = "#aab2c4";
  ctx.textAlign = "center";
  for (const u of [0, 0.5, 1]) {
    ctx.fillText(formatTick(lo + u * span), frame.toX(u), frame.toY(-0.03));
  }
}

function densityScatter(frame: Frame, payload: Record<string, unknown>): void {
  const gridX = payload.grid_x as number[];
  const gridY = payload.grid_y as number[];
  const density = payload.density as number[][];
  const points = payload.points as [number, number][];
  const { ctx } = frame;

  const x0 = gridX[0];
  const xSpan = gridX[gridX.length - 1] - x0 || 1;
  const y0 = gridY[0];
  const ySpan = gridY[gridY.length - 1] - y0 || 1;
  const top = matrixMax(density) || 1;

  for (let i = 0; i < gridX.length; i++) {
    for (let j = 0; j < gridY.length; j++) {
      const px0 = frame.toX(i / gridX.length);
      const px1 = frame.toX((i + 1) / gridX.length);
      const py0 = frame.toY((j + 1) / gridY.length);
      const py1 = frame.toY(j / gridY.length);
      ctx.fillStyle = rampColor(density[i][j] / top);
      ctx.fillRect(px0, py0, px1 - px0 + 0.5, py1 - py0 + 0.5);
    }
  }
  ctx.fillStyle = "rgba(244, 241, 222, 0.8)";
  for (const [x, y] of points) {
    ctx.beginPath();
    ctx.arc(frame.toX((x - x0) / xSpan), frame.toY((y - y0) / ySpan), 1.5, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.fillStyle = "#aab2c4";
  ctx.font = "11px system-ui, sans-serif";
  ctx.textAlign = "center";
  for (const u of [0, 0.5, 1]) {
    ctx.fillText(formatTick(x0 + u * xSpan), frame.toX(u), frame.toY(-0.03));
  }
  ctx.textAlign = "right";
  for (const v of [0, 0.5, 1]) {
    ctx.fillText(formatTick(y0 + v * ySpan), frame.toX(-0.01), frame.toY(v));
  }
}

/** True when the payload is the no-overlapping-records marker. */
export function isEmptyPayload(entry: ChartEntry): boolean {
  return entry.payload.empty === true;
}

export function drawChart(
  ctx: CanvasRenderingContext2D,
  entry: ChartEntry,
  cam: Camera,
  width: number,
  height: number
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#0c0f15";
  ctx.fillRect(0, 0, width, height);
  const frame = makeFrame(ctx, cam, width, height);
  if (entry.type === "heatmap") heatmap(frame, entry.payload);
  else if (entry.type === "ridgeline") ridgeline(frame, entry.payload);
  else densityScatter(frame, entry.payload);
  drawAxisLabels(frame, entry.x_feature, entry.y_feature);
}
