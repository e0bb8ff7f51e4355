import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { Envelope } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture<T>(name: string): Envelope<T> {
  const raw = readFileSync(join(here, "fixtures", name), "utf-8");
  return JSON.parse(raw) as Envelope<T>;
}

export function payloadOf<T>(name: string): T {
  return loadFixture<T>(name).data;
}

/** Every rendered numeric label (the data-v mirror of its visible text). */
export function renderedNumbers(html: string): string[] {
  return [...html.matchAll(/data-v="([^"]+)"/g)].map((m) => m[1]);
}

/** Every number anywhere in a payload, as its exact String form. */
export function payloadNumbers(value: unknown, out = new Set<string>()): Set<string> {
  if (typeof value === "number") {
    out.add(String(value));
  } else if (Array.isArray(value)) {
    for (const item of value) payloadNumbers(item, out);
  } else if (value && typeof value === "object") {
    for (const item of Object.values(value)) payloadNumbers(item, out);
  }
  return out;
}
