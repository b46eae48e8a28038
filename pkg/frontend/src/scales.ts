/** Visual encodings and the pan/zoom camera transform. */

import type { FeatureKind } from "./schema.js";

export interface Camera {
  panX: number;
  panY: number;
  zoom: number;
}

export const MIN_ZOOM = 0.05;
export const MAX_ZOOM = 100;

export function freshCamera(): Camera {
  return { panX: 0, panY: 0, zoom: 1 };
}

function unitScale(width: number, height: number, zoom: number): number {
  return 0.45 * Math.min(width, height) * zoom;
}

export function worldToScreen(
  cam: Camera,
  width: number,
  height: number,
  x: number,
  y: number
): { x: number; y: number } {
  const s = unitScale(width, height, cam.zoom);
  return { x: width / 2 + (x - cam.panX) * s, y: height / 2 + (y - cam.panY) * s };
}

export function screenToWorld(
  cam: Camera,
  width: number,
  height: number,
  sx: number,
  sy: number
): { x: number; y: number } {
  const s = unitScale(width, height, cam.zoom);
  return { x: cam.panX + (sx - width / 2) / s, y: cam.panY + (sy - height / 2) / s };
}

/** Zoom by a factor keeping the world point under (sx, sy) fixed. */
export function zoomAt(
  cam: Camera,
  factor: number,
  width: number,
  height: number,
  sx: number,
  sy: number
): Camera {
  const anchor = screenToWorld(cam, width, height, sx, sy);
  const zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, cam.zoom * factor));
  const s = unitScale(width, height, zoom);
  return {
    zoom,
    panX: anchor.x - (sx - width / 2) / s,
    panY: anchor.y - (sy - height / 2) / s,
  };
}

export function panBy(cam: Camera, width: number, height: number, dx: number, dy: number): Camera {
  const s = unitScale(width, height, cam.zoom);
  return { ...cam, panX: cam.panX - dx / s, panY: cam.panY - dy / s };
}

/** Edge stroke width proportional to weight relative to the strongest edge. */
export function edgeWidth(weight: number, maxWeight: number): number {
  if (maxWeight <= 0) return 1;
  return 0.75 + 5.25 * (weight / maxWeight);
}

export function nodeColor(kind: FeatureKind): string {
  return kind === "discrete" ? "#e07a3f" : "#2a9d8f";
}

const RAMP: [number, [number, number, number]][] = [
  [0.0, [13, 18, 48]],
  [0.35, [38, 87, 124]],
  [0.65, [42, 157, 143]],
  [0.85, [233, 196, 106]],
  [1.0, [244, 241, 222]],
];

/** Sequential color ramp over [0, 1] for density and count grids. */
export function rampColor(t: number): string {
  const v = Math.min(1, Math.max(0, t));
  for (let i = 1; i < RAMP.length; i++) {
    const [t1, c1] = RAMP[i];
    const [t0, c0] = RAMP[i - 1];
    if (v <= t1) {
      const f = t1 === t0 ? 0 : (v - t0) / (t1 - t0);
      const mix = c0.map((a, j) => Math.round(a + f * (c1[j] - a)));
      return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
    }
  }
  const last = RAMP[RAMP.length - 1][1];
  return `rgb(${last[0]},${last[1]},${last[2]})`;
}

export function matrixMax(rows: number[][]): number {
  let best = 0;
  for (const row of rows) for (const v of row) if (v > best) best = v;
  return best;
}
