/**
 * Session controller: the single mutable object behind the workbench UI.
 *
 * All state lives on the server; this class caches the latest validated
 * snapshot, the match list with its epoch, and a history of canonical keys
 * for the timeline.  A stale apply (409) refreshes the matches instead of
 * mutating anything.
 */

import { ApiError, Client, type Match, type SessionState } from "./api.js";
import { renderSvg, type NodeTypeJson } from "./render.js";

export interface ApplyOutcome {
  ok: boolean;
  /** set when the apply hit a stale epoch and the match list was refreshed */
  refreshed?: boolean;
}

export class WorkbenchSession {
  private state: SessionState | null = null;
  private matches: Match[] = [];
  private matchesEpoch = 0;
  /** canonical keys of every state visited, oldest first */
  readonly timeline: string[] = [];

  constructor(private readonly client: Client) {}

  get current(): SessionState {
    if (this.state === null) throw new Error("no session loaded");
    return this.state;
  }

  get matchList(): readonly Match[] {
    return this.matches;
  }

  async load(grammar: unknown, start: unknown): Promise<SessionState> {
    this.state = await this.client.createSession(grammar, start);
    this.timeline.length = 0;
    this.timeline.push(this.state.key);
    await this.refreshMatches();
    return this.state;
  }

  async refreshMatches(): Promise<void> {
    const out = await this.client.listMatches(this.current.id);
    this.matches = out.matches;
    this.matchesEpoch = out.matches_epoch;
  }

  async pickAndApply(index: number): Promise<ApplyOutcome> {
    const m = this.matches[index];
    if (m === undefined) {
      return { ok: false };
    }
    try {
      this.state = await this.client.apply(
        this.current.id,
        m.rule,
        m.match_index,
        this.matchesEpoch,
      );
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        await this.refreshMatches();
        return { ok: false, refreshed: true };
      }
      throw err;
    }
    this.timeline.push(this.state.key);
    await this.refreshMatches();
    return { ok: true };
  }

  async undo(): Promise<void> {
    this.state = await this.client.undo(this.current.id);
    this.timeline.push(this.state.key);
    await this.refreshMatches();
  }

  async exportTrace(): Promise<unknown> {
    return this.client.trace(this.current.id);
  }

  /** SVG of the current host; optionally highlight one match's image. */
  render(types?: Record<string, NodeTypeJson>, highlightMatch?: number): string {
    const st = this.current;
    let highlight;
    const m = highlightMatch === undefined ? undefined : this.matches[highlightMatch];
    if (m !== undefined) {
      highlight = {
        nodes: m.components["n"] ?? [],
        edges: m.components["e"] ?? [],
      };
    }
    return renderSvg(st.current, { types, highlight, caption: st.key });
  }
}
