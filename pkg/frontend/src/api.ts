/**
 * Typed client for the session HTTP API.
 *
 * Every response is validated with zod before it reaches the UI; the UI
 * never computes rewrites locally, it only renders what the server sent.
 */

import { z } from "zod";

export const presheafSchema = z.object({
  schema: z.union([z.string(), z.object({ name: z.string() }).passthrough()]),
  carriers: z.record(z.number().int().nonnegative()),
  action: z.record(z.array(z.number().int().nonnegative())),
});
export type PresheafJson = z.infer<typeof presheafSchema>;

export const sessionStateSchema = z.object({
  id: z.string(),
  current: presheafSchema,
  key: z.string(),
  depth: z.number().int().nonnegative(),
  matches_epoch: z.number().int().nonnegative(),
});
export type SessionState = z.infer<typeof sessionStateSchema>;

export const matchSchema = z.object({
  rule: z.string(),
  match_index: z.number().int().nonnegative(),
  components: z.record(z.array(z.number().int().nonnegative())),
  preview_key: z.string(),
});
export type Match = z.infer<typeof matchSchema>;

export const matchListSchema = z.object({
  matches: z.array(matchSchema),
  matches_epoch: z.number().int().nonnegative(),
});

export const applyResponseSchema = z.object({
  state: sessionStateSchema,
  step: z.unknown(),
});

export const derivationSchema = z.object({
  start: presheafSchema,
  end: presheafSchema,
  steps: z.array(z.unknown()),
});
export type DerivationJson = z.infer<typeof derivationSchema>;

const errorEnvelope = z.object({
  error: z.object({ code: z.string(), detail: z.string() }),
});

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${status} ${code}: ${detail}`);
  }
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class Client {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request(path: string, method: string, body?: unknown): Promise<unknown> {
    const res = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const tree = await res.json();
    if (res.status >= 400) {
      const parsed = errorEnvelope.safeParse(tree);
      if (parsed.success) {
        throw new ApiError(res.status, parsed.data.error.code, parsed.data.error.detail);
      }
      throw new ApiError(res.status, "unknown", JSON.stringify(tree));
    }
    return tree;
  }

  async createSession(grammar: unknown, start: unknown): Promise<SessionState> {
    return sessionStateSchema.parse(
      await this.request("/sessions", "POST", { grammar, start }),
    );
  }

  async getSession(id: string): Promise<SessionState> {
    return sessionStateSchema.parse(await this.request(`/sessions/${id}`, "GET"));
  }

  async listMatches(id: string): Promise<{ matches: Match[]; matches_epoch: number }> {
    return matchListSchema.parse(await this.request(`/sessions/${id}/matches`, "GET"));
  }

  async apply(
    id: string,
    rule: string,
    matchIndex: number,
    matchesEpoch?: number,
  ): Promise<SessionState> {
    const tree = await this.request(`/sessions/${id}/apply`, "POST", {
      rule,
      match_index: matchIndex,
      matches_epoch: matchesEpoch,
    });
    return applyResponseSchema.parse(tree).state;
  }

  async undo(id: string): Promise<SessionState> {
    return sessionStateSchema.parse(await this.request(`/sessions/${id}/undo`, "POST"));
  }

  async trace(id: string): Promise<DerivationJson> {
    return derivationSchema.parse(await this.request(`/sessions/${id}/trace`, "GET"));
  }
}
