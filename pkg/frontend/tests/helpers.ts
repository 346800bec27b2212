/** Shared test utilities: typed fixture casts and a scripted fetch stub. */

import type { FetchLike } from "../src/api.js";
import type { ContestReportPayload, SessionPayload } from "../src/types.js";

export function asSession(raw: unknown): SessionPayload {
  return raw as SessionPayload;
}

export function asReport(raw: unknown): ContestReportPayload {
  return raw as ContestReportPayload;
}

export interface ScriptedResponse {
  method: string;
  path: string;
  body: unknown;
  status?: number;
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface ScriptedFetch {
  fetch: FetchLike;
  calls: RecordedCall[];
  /** Throws if any scripted response was never requested. */
  assertDrained: () => void;
}

/**
 * Fetch stub that serves a fixed script of responses in order and fails
 * loudly on any request that deviates from it.
 */
export function scriptedFetch(script: ScriptedResponse[]): ScriptedFetch {
  const remaining = [...script];
  const calls: RecordedCall[] = [];
  const fetchImpl: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const expected = remaining.shift();
    if (!expected) {
      throw new Error(`unexpected request ${method} ${input}`);
    }
    if (expected.method !== method || expected.path !== input) {
      throw new Error(`expected ${expected.method} ${expected.path}, got ${method} ${input}`);
    }
    calls.push({ method, path: input, body: init?.body ? JSON.parse(init.body as string) : undefined });
    return new Response(JSON.stringify(expected.body), {
      status: expected.status ?? 200,
      headers: { "content-type": "application/json" },
    });
  };
  return {
    fetch: fetchImpl,
    calls,
    assertDrained: () => {
      if (remaining.length > 0) {
        throw new Error(`${remaining.length} scripted responses were never requested`);
      }
    },
  };
}
