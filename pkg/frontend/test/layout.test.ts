import { describe, expect, it } from "vitest";

import type { PresheafJson } from "../src/api.js";
import { layeredLayout } from "../src/layout.js";

const path3: PresheafJson = {
  schema: "GRAPH",
  carriers: { n: 3, e: 2 },
  action: { s: [0, 1], t: [1, 2] },
};

describe("layeredLayout", () => {
  it("is deterministic", () => {
    expect(layeredLayout(path3, [0])).toEqual(layeredLayout(path3, [0]));
  });

  it("layers a path by distance from the root", () => {
    const { nodes } = layeredLayout(path3, [0]);
    expect(nodes[0]!.x).toBeLessThan(nodes[1]!.x);
    expect(nodes[1]!.x).toBeLessThan(nodes[2]!.x);
  });

  it("follows edges in both directions", () => {
    const { nodes } = layeredLayout(path3, [1]);
    expect(nodes[0]!.x).toBe(nodes[2]!.x);
  });

  it("parks unreachable nodes in a trailing layer", () => {
    const p: PresheafJson = {
      schema: "GRAPH",
      carriers: { n: 3, e: 1 },
      action: { s: [0], t: [1] },
    };
    const { nodes } = layeredLayout(p, [0]);
    expect(nodes[2]!.x).toBeGreaterThan(nodes[1]!.x);
  });

  it("handles the empty graph", () => {
    const empty: PresheafJson = {
      schema: "GRAPH",
      carriers: { n: 0, e: 0 },
      action: { s: [], t: [] },
    };
    expect(layeredLayout(empty).nodes).toEqual([]);
  });
});
