/** API client: concurrent fetch de-duplication plus stale-response gating. */

import type { Envelope } from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string,
    detail: string,
  ) {
    super(detail);
  }
}

export function requestKey(path: string, params: Record<string, string> = {}): string {
  const pairs = Object.entries(params)
    .filter(([, value]) => value !== "")
    .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0));
  const query = pairs.map(([k, v]) => `${k}=${encodeURIComponent(v)}`).join("&");
  return query ? `${path}?${query}` : path;
}

export class ApiClient {
  private inflight = new Map<string, Promise<unknown>>();

  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike,
  ) {}

  /** Concurrent identical requests share one in-flight promise. */
  get<T>(path: string, params: Record<string, string> = {}): Promise<Envelope<T>> {
    const key = requestKey(path, params);
    const existing = this.inflight.get(key);
    if (existing) return existing as Promise<Envelope<T>>;
    const promise = this.fetchFn(this.base + key)
      .then(async (response) => {
        const body = (await response.json()) as Envelope<T>;
        if (!response.ok || body.status !== "ok") {
          throw new ApiError(
            response.status,
            body.error?.kind ?? "http-error",
            body.error?.detail ?? `HTTP ${response.status}`,
          );
        }
        return body;
      })
      .finally(() => {
        this.inflight.delete(key);
      });
    this.inflight.set(key, promise);
    return promise as Promise<Envelope<T>>;
  }
}

/**
 * Monotone request generations: a render cycle takes a ticket, and late
 * responses from earlier cycles are discarded instead of applied.
 */
export class RequestGate {
  private current = 0;

  next(): number {
    this.current += 1;
    return this.current;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.current;
  }
}
