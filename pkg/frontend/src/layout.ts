/**
 * Deterministic force-directed layout. The claim node is pinned at the
 * center of the viewport; evidence nodes start on a circle around it and
 * settle under Fruchterman-Reingold forces with a cooling schedule. No
 * randomness: the same graph always lays out the same way. Positions are
 * cosmetic and never sent back to the engine.
 */

import type { GraphPayload } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

const ITERATIONS = 150;
const MARGIN = 40;

export function layoutGraph(graph: GraphPayload, width: number, height: number): Map<string, Point> {
  const cx = width / 2;
  const cy = height / 2;
  const claimId = graph.arguments.find((a) => a.kind === "claim")?.id ?? null;
  const ids = graph.arguments.map((a) => a.id);
  const free = ids.filter((id) => id !== claimId).sort();

  const positions = new Map<string, Point>();
  if (claimId !== null) positions.set(claimId, { x: cx, y: cy });
  const ring = Math.min(width, height) / 3;
  free.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / free.length - Math.PI / 2;
    positions.set(id, { x: cx + ring * Math.cos(angle), y: cy + ring * Math.sin(angle) });
  });
  if (free.length === 0 || ids.length < 2) return positions;

  const k = Math.min(width, height) / Math.max(2.5, Math.sqrt(ids.length) + 1);
  const edges = [...graph.attacks, ...graph.supports];

  for (let iter = 0; iter < ITERATIONS; iter++) {
    const disp = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    // Pairwise repulsion.
    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = positions.get(ids[i])!;
        const b = positions.get(ids[j])!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const d = Math.max(Math.hypot(dx, dy), 0.01);
        const push = (k * k) / d;
        disp.get(ids[i])!.x += (dx / d) * push;
        disp.get(ids[i])!.y += (dy / d) * push;
        disp.get(ids[j])!.x -= (dx / d) * push;
        disp.get(ids[j])!.y -= (dy / d) * push;
      }
    }

    // Spring attraction along edges, both polarities alike.
    for (const [src, dst] of edges) {
      const a = positions.get(src);
      const b = positions.get(dst);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(Math.hypot(dx, dy), 0.01);
      const pull = (d * d) / k;
      disp.get(src)!.x += (dx / d) * pull;
      disp.get(src)!.y += (dy / d) * pull;
      disp.get(dst)!.x -= (dx / d) * pull;
      disp.get(dst)!.y -= (dy / d) * pull;
    }

    // Cooling limits the step so the layout settles.
    const temperature = (Math.min(width, height) / 8) * (1 - iter / ITERATIONS);
    for (const id of free) {
      const p = positions.get(id)!;
      const f = disp.get(id)!;
      f.x += (cx - p.x) * 0.05;
      f.y += (cy - p.y) * 0.05;
      const magnitude = Math.max(Math.hypot(f.x, f.y), 0.01);
      const step = Math.min(magnitude, temperature);
      positions.set(id, {
        x: Math.max(MARGIN, Math.min(width - MARGIN, p.x + (f.x / magnitude) * step)),
        y: Math.max(MARGIN, Math.min(height - MARGIN, p.y + (f.y / magnitude) * step)),
      });
    }
  }
  return positions;
}
