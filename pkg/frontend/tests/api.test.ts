import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, RequestGate, requestKey } from "../src/api.js";

function okBody(data: unknown) {
  return { status: "ok", data, params_echo: {}, corpus_digest: "d" };
}

function deferredFetch() {
  const calls: string[] = [];
  const resolvers: ((body: unknown) => void)[] = [];
  const fetchFn = (url: string) => {
    calls.push(url);
    return new Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>((resolve) => {
      resolvers.push((body: unknown) =>
        resolve({ ok: true, status: 200, json: async () => body }),
      );
    });
  };
  return { fetchFn, calls, resolvers };
}

describe("request keys", () => {
  it("sorts params and drops empties", () => {
    expect(requestKey("/x", { b: "2", a: "1", empty: "" })).toBe("/x?a=1&b=2");
    expect(requestKey("/x")).toBe("/x");
  });

  it("encodes values", () => {
    expect(requestKey("/x", { games: "a,b" })).toBe("/x?games=a%2Cb");
  });
});

describe("fetch de-duplication", () => {
  it("concurrent identical requests share one fetch", async () => {
    const { fetchFn, calls, resolvers } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    const first = client.get("/games");
    const second = client.get("/games");
    expect(calls).toHaveLength(1);
    resolvers[0](okBody({ n: 1 }));
    const [a, b] = await Promise.all([first, second]);
    expect(a).toBe(b);
  });

  it("sequential requests fetch again", async () => {
    const { fetchFn, calls, resolvers } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    const first = client.get("/games");
    resolvers[0](okBody({}));
    await first;
    const second = client.get("/games");
    resolvers[1](okBody({}));
    await second;
    expect(calls).toHaveLength(2);
  });

  it("distinct params are distinct requests", () => {
    const { fetchFn, calls } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    void client.get("/compare/radar", { normalize: "0" });
    void client.get("/compare/radar", { normalize: "1" });
    expect(calls).toHaveLength(2);
  });

  it("error envelopes raise ApiError", async () => {
    const client = new ApiClient("", async () => ({
      ok: false,
      status: 404,
      json: async () => ({
        status: "error",
        data: null,
        params_echo: {},
        corpus_digest: "d",
        error: { kind: "not-found", detail: "unknown mission" },
      }),
    }));
    await expect(client.get("/missions/x/flow")).rejects.toThrowError(ApiError);
  });
});

describe("stale-response gating", () => {
  it("only the latest ticket is current", () => {
    const gate = new RequestGate();
    const first = gate.next();
    const second = gate.next();
    expect(gate.isCurrent(first)).toBe(false);
    expect(gate.isCurrent(second)).toBe(true);
  });

  it("discards a late response from an earlier cycle", async () => {
    const { fetchFn, resolvers } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    const gate = new RequestGate();
    const applied: string[] = [];

    async function cycle(name: string, requestPath: string) {
      const ticket = gate.next();
      const body = await client.get(requestPath);
      if (gate.isCurrent(ticket)) applied.push(name);
      return body;
    }

    const slow = cycle("slow", "/a");
    const fast = cycle("fast", "/b");
    resolvers[1](okBody({})); // second cycle resolves first
    await fast;
    resolvers[0](okBody({})); // the slow response arrives late
    await slow;
    expect(applied).toEqual(["fast"]);
  });
});
