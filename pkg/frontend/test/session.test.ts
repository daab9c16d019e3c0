/** Controller flow against an in-memory fake of the HTTP API. */

import { describe, expect, it } from "vitest";

import { Client, type FetchLike } from "../src/api.js";
import { WorkbenchSession } from "../src/session.js";

const HOST = {
  schema: "GRAPH",
  carriers: { n: 1, e: 1 },
  action: { s: [0], t: [0] },
};
const DONE = {
  schema: "GRAPH",
  carriers: { n: 1, e: 0 },
  action: { s: [], t: [] },
};

/** Minimal server double: one rule, one loop, epoch bookkeeping like the real one. */
function fakeServer() {
  let depth = 0;
  let epoch = 0;
  const state = () => ({
    id: "abc",
    current: depth === 0 ? HOST : DONE,
    key: depth === 0 ? "key-loop" : "key-flat",
    depth,
    matches_epoch: epoch,
  });
  const matches = () => ({
    matches:
      depth === 0
        ? [{ rule: "drop-loop", match_index: 0, components: { n: [0], e: [0] }, preview_key: "key-flat" }]
        : [],
    matches_epoch: epoch,
  });
  const fetchImpl: FetchLike = async (url, init) => {
    const body = init?.body === undefined ? undefined : JSON.parse(init.body);
    const reply = (status: number, tree: unknown) => ({
      status,
      json: async () => tree,
    });
    if (url.endsWith("/sessions") && init?.method === "POST") return reply(201, state());
    if (url.endsWith("/matches")) return reply(200, matches());
    if (url.endsWith("/apply")) {
      if (body.matches_epoch !== undefined && body.matches_epoch !== epoch) {
        return reply(409, { error: { code: "stale", detail: "stale" } });
      }
      if (depth !== 0) return reply(409, { error: { code: "match", detail: "gone" } });
      depth = 1;
      epoch += 1;
      return reply(200, { state: state(), step: {} });
    }
    if (url.endsWith("/undo")) {
      depth = 0;
      epoch += 1;
      return reply(200, state());
    }
    if (url.endsWith("/trace")) {
      return reply(200, { start: HOST, end: state().current, steps: depth === 1 ? [{}] : [] });
    }
    return reply(200, state());
  };
  return { fetchImpl, bumpEpoch: () => (epoch += 1) };
}

describe("WorkbenchSession", () => {
  it("loads and lists the server's matches verbatim", async () => {
    const server = fakeServer();
    const s = new WorkbenchSession(new Client("http://x", server.fetchImpl));
    await s.load({}, HOST);
    expect(s.matchList).toHaveLength(1);
    expect(s.matchList[0]!.rule).toBe("drop-loop");
    expect(s.timeline).toEqual(["key-loop"]);
  });

  it("apply updates to the server state and extends the timeline", async () => {
    const server = fakeServer();
    const s = new WorkbenchSession(new Client("http://x", server.fetchImpl));
    await s.load({}, HOST);
    const out = await s.pickAndApply(0);
    expect(out.ok).toBe(true);
    expect(s.current.key).toBe("key-flat");
    expect(s.matchList).toHaveLength(0);
    expect(s.timeline).toEqual(["key-loop", "key-flat"]);
  });

  it("a stale apply refreshes matches instead of mutating", async () => {
    const server = fakeServer();
    const s = new WorkbenchSession(new Client("http://x", server.fetchImpl));
    await s.load({}, HOST);
    server.bumpEpoch(); // concurrent writer
    const out = await s.pickAndApply(0);
    expect(out).toEqual({ ok: false, refreshed: true });
    expect(s.current.key).toBe("key-loop");
  });

  it("undo restores the previous canonical key", async () => {
    const server = fakeServer();
    const s = new WorkbenchSession(new Client("http://x", server.fetchImpl));
    await s.load({}, HOST);
    await s.pickAndApply(0);
    await s.undo();
    expect(s.current.key).toBe("key-loop");
  });

  it("renders the current host with the canonical key as caption", async () => {
    const server = fakeServer();
    const s = new WorkbenchSession(new Client("http://x", server.fetchImpl));
    await s.load({}, HOST);
    const svg = s.render(undefined, 0);
    expect(svg).toContain("key-loop");
    expect(svg).toContain('data-nodes="1"');
    expect(svg).toContain("#e08700"); // highlighted match image
  });
});
