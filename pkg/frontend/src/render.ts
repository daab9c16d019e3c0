/**
 * SVG rendering of the current host graph.
 *
 * Pure string output (no DOM) so tests can assert on markup.  Node fills
 * follow the ZX color convention when a type map is present; loop edges
 * render as arcs; a highlighted match tints its image.
 */

import type { PresheafJson } from "./api.js";
import { layeredLayout } from "./layout.js";

export type NodeTypeJson = string | Record<string, string>;

const FILLS: Record<string, string> = {
  white: "#ffffff",
  black: "#222222",
  yellow: "#f0c419",
  green: "#4caf50",
  red: "#e05252",
};

function nodeFill(t: NodeTypeJson | undefined): string {
  if (t === undefined) return FILLS["white"]!;
  const tag = typeof t === "string" ? t : Object.keys(t)[0]!;
  return FILLS[tag] ?? FILLS["white"]!;
}

function nodeLabel(v: number, t: NodeTypeJson | undefined): string {
  if (t !== undefined && typeof t !== "string") {
    const tag = Object.keys(t)[0]!;
    return `${v}:${t[tag]}`;
  }
  return String(v);
}

export interface RenderOptions {
  types?: Record<string, NodeTypeJson>;
  roots?: number[];
  highlight?: { nodes: number[]; edges: number[] };
  caption?: string;
}

export function renderSvg(p: PresheafJson, opts: RenderOptions = {}): string {
  const layout = layeredLayout(p, opts.roots ?? []);
  const src = p.action["s"] ?? [];
  const dst = p.action["t"] ?? [];
  const hotNodes = new Set(opts.highlight?.nodes ?? []);
  const hotEdges = new Set(opts.highlight?.edges ?? []);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" height="${layout.height}" data-nodes="${layout.nodes.length}" data-edges="${src.length}">`,
  );
  parts.push(
    `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>`,
  );
  src.forEach((s, e) => {
    const t = dst[e]!;
    const a = layout.nodes[s]!;
    const b = layout.nodes[t]!;
    const stroke = hotEdges.has(e) ? "#e08700" : "#555555";
    if (s === t) {
      parts.push(
        `<path class="edge loop" data-edge="${e}" d="M ${a.x} ${a.y - 14} C ${a.x - 34} ${a.y - 44}, ${a.x + 34} ${a.y - 44}, ${a.x + 4} ${a.y - 14}" fill="none" stroke="${stroke}" marker-end="url(#arrow)"/>`,
      );
    } else {
      parts.push(
        `<line class="edge" data-edge="${e}" x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" stroke="${stroke}" marker-end="url(#arrow)"/>`,
      );
    }
  });
  layout.nodes.forEach((pt, v) => {
    const t = opts.types?.[String(v)];
    const ring = hotNodes.has(v) ? "#e08700" : "#333333";
    parts.push(
      `<circle class="node" data-node="${v}" cx="${pt.x}" cy="${pt.y}" r="14" fill="${nodeFill(t)}" stroke="${ring}" stroke-width="${hotNodes.has(v) ? 3 : 1.5}"/>`,
    );
    parts.push(
      `<text class="label" x="${pt.x}" y="${pt.y + 28}" text-anchor="middle" font-size="11">${nodeLabel(v, t)}</text>`,
    );
  });
  if (opts.caption !== undefined) {
    parts.push(
      `<text class="caption" x="8" y="${layout.height - 8}" font-size="10" font-family="monospace">${escapeXml(opts.caption)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
