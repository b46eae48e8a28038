/** Screen-space hit testing for nodes and edges. */

export function pointSegmentDistance(
  px: number,
  py: number,
  ax: number,
  ay: number,
  bx: number,
  by: number
): number {
  const dx = bx - ax;
  const dy = by - ay;
  const lengthSq = dx * dx + dy * dy;
  let t = 0;
  if (lengthSq > 0) {
    t = ((px - ax) * dx + (py - ay) * dy) / lengthSq;
    t = Math.min(1, Math.max(0, t));
  }
  const cx = ax + t * dx;
  const cy = ay + t * dy;
  return Math.hypot(px - cx, py - cy);
}

export interface ScreenPoint {
  x: number;
  y: number;
}

/** Index of the closest node within `radius` pixels, or null. */
export function pickNode(points: ScreenPoint[], x: number, y: number, radius: number): number | null {
  let best: number | null = null;
  let bestDist = radius;
  points.forEach((p, i) => {
    const d = Math.hypot(p.x - x, p.y - y);
    if (d <= bestDist) {
      bestDist = d;
      best = i;
    }
  });
  return best;
}

/** Index of the closest edge within `threshold` pixels, or null. */
export function pickEdge(
  segments: [ScreenPoint, ScreenPoint][],
  x: number,
  y: number,
  threshold: number
): number | null {
  let best: number | null = null;
  let bestDist = threshold;
  segments.forEach(([a, b], i) => {
    const d = pointSegmentDistance(x, y, a.x, a.y, b.x, b.y);
    if (d <= bestDist) {
      bestDist = d;
      best = i;
    }
  });
  return best;
}
