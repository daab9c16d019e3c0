/**
 * Deterministic layered layout for graph-schema presheaves.
 *
 * Nodes are layered by breadth-first distance from the root set (interface
 * nodes when present, otherwise node 0), following edges in both
 * directions; unreachable nodes go to a trailing layer.  No randomness and
 * no force simulation, so the same input always renders identically.
 */

import type { PresheafJson } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export interface Layout {
  nodes: Point[];
  width: number;
  height: number;
}

const X_GAP = 120;
const Y_GAP = 70;
const MARGIN = 60;

export function layeredLayout(p: PresheafJson, roots: number[] = []): Layout {
  const n = p.carriers["n"] ?? 0;
  const src = p.action["s"] ?? [];
  const dst = p.action["t"] ?? [];
  const adjacent: number[][] = Array.from({ length: n }, () => []);
  src.forEach((s, e) => {
    const t = dst[e];
    if (t === undefined) return;
    adjacent[s]!.push(t);
    adjacent[t]!.push(s);
  });

  const layer = new Array<number>(n).fill(-1);
  const queue: number[] = [];
  const seeds = roots.filter((r) => r >= 0 && r < n);
  for (const r of seeds.length > 0 ? seeds : n > 0 ? [0] : []) {
    if (layer[r] === -1) {
      layer[r] = 0;
      queue.push(r);
    }
  }
  while (queue.length > 0) {
    const v = queue.shift()!;
    for (const w of [...adjacent[v]!].sort((a, b) => a - b)) {
      if (layer[w] === -1) {
        layer[w] = layer[v]! + 1;
        queue.push(w);
      }
    }
  }
  let maxLayer = layer.reduce((m, l) => Math.max(m, l), 0);
  for (let v = 0; v < n; v++) {
    if (layer[v] === -1) layer[v] = maxLayer + 1;
  }
  maxLayer = layer.reduce((m, l) => Math.max(m, l), 0);

  const slot = new Array<number>(n).fill(0);
  const perLayer = new Array<number>(maxLayer + 1).fill(0);
  for (let v = 0; v < n; v++) {
    slot[v] = perLayer[layer[v]!]!;
    perLayer[layer[v]!] = slot[v]! + 1;
  }
  const tallest = perLayer.reduce((m, c) => Math.max(m, c), 1);
  const nodes = Array.from({ length: n }, (_, v) => ({
    x: MARGIN + layer[v]! * X_GAP,
    y: MARGIN + slot[v]! * Y_GAP,
  }));
  return {
    nodes,
    width: 2 * MARGIN + maxLayer * X_GAP,
    height: 2 * MARGIN + (tallest - 1) * Y_GAP,
  };
}
