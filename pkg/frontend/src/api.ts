/** Typed client for the pegcert HTTP service.
 *
 * Every request/response pair is appended to a replayable log: running the
 * same log against a fresh service (same seeds) must reproduce the same
 * reports byte for byte — the UI holds no solver state of its own.
 */

import type {
  BoardJson, MoveJson, MoveResponse, ProblemJson, ReachResponse,
  ReportResponse, RunConfig,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface LogEntry {
  method: string;
  path: string;
  body: unknown;
  response: unknown;
}

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class ApiClient {
  readonly log: LogEntry[] = [];

  constructor(private readonly base: string,
              private readonly fetchImpl: FetchLike = fetch) {}

  private async request<T>(method: string, path: string,
                           body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { 'content-type': 'application/json' };
    }
    const res = await this.fetchImpl(this.base + path, init);
    const payload = await res.json();
    if (!res.ok) {
      throw new ApiError(res.status, String(payload?.detail ?? res.status));
    }
    this.log.push({ method, path, body: body ?? null, response: payload });
    return payload as T;
  }

  createBoard(spec: { name?: string; grid?: string }): Promise<BoardJson> {
    return this.request('POST', '/boards', spec);
  }

  getBoard(id: string): Promise<BoardJson> {
    return this.request('GET', `/boards/${id}`);
  }

  createProblem(start: string, end: string): Promise<ProblemJson> {
    return this.request('POST', '/problems', { start, end });
  }

  run(pid: string, config: RunConfig = {}): Promise<{ state: string }> {
    return this.request('POST', `/problems/${pid}/run`, config);
  }

  report(pid: string): Promise<ReportResponse> {
    return this.request('GET', `/problems/${pid}/report`);
  }

  cancel(pid: string): Promise<{ state: string }> {
    return this.request('POST', `/problems/${pid}/cancel`);
  }

  playMove(pid: string, move: MoveJson): Promise<MoveResponse> {
    return this.request('POST', `/problems/${pid}/moves`, { move });
  }

  resetMoves(pid: string): Promise<MoveResponse> {
    return this.request('POST', `/problems/${pid}/moves`, { reset: true });
  }

  reach(boardId: string, mode: 'depth' | 'height',
        problem?: string): Promise<ReachResponse> {
    const qs = new URLSearchParams({ mode });
    if (problem) qs.set('problem', problem);
    return this.request('GET', `/boards/${boardId}/reach?${qs}`);
  }

  /** Poll a run to completion; at most one in-flight run per problem. */
  async awaitReport(pid: string, intervalMs = 50,
                    timeoutMs = 60_000): Promise<ReportResponse> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const r = await this.report(pid);
      if (r.state === 'done' || r.state === 'cancelled') return r;
      if (Date.now() > deadline) throw new Error('run timed out');
      await new Promise((ok) => setTimeout(ok, intervalMs));
    }
  }
}

/** Re-issue a recorded log against a fresh service and return the
 * responses; byte-identical responses certify the UI added no state. */
export async function replayLog(log: LogEntry[], base: string,
                                fetchImpl: FetchLike = fetch):
    Promise<unknown[]> {
  const out: unknown[] = [];
  for (const entry of log) {
    const init: RequestInit = { method: entry.method };
    if (entry.body !== null) {
      init.body = JSON.stringify(entry.body);
      init.headers = { 'content-type': 'application/json' };
    }
    const res = await fetchImpl(base + entry.path, init);
    out.push(await res.json());
  }
  return out;
}
