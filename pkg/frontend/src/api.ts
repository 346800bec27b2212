/**
 * Thin fetch wrapper for the verification API. Pass a fetch-compatible
 * function to the constructor to run against a stub in tests.
 */

import type {
  ApiErrorBody,
  ContestReportPayload,
  EditPayload,
  GraphPayload,
  SessionPayload,
  SessionSummaryPayload,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface CreateSessionRequest {
  qbaf: GraphPayload;
  claim?: string | null;
  tau?: number;
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(fetchImpl?: FetchLike, private readonly base: string = "") {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchImpl(this.base + path, init);
    let parsed: unknown = null;
    try {
      parsed = await response.json();
    } catch {
      // fall through to the status check with an empty body
    }
    if (!response.ok) {
      const err = (parsed ?? {}) as Partial<ApiErrorBody>;
      throw new ApiError(response.status, err.error ?? "HttpError", err.message ?? `request failed with ${response.status}`);
    }
    return parsed as T;
  }

  listSessions(): Promise<{ sessions: SessionSummaryPayload[] }> {
    return this.request("GET", "/sessions");
  }

  getSession(sessionId: string): Promise<SessionPayload> {
    return this.request("GET", `/session/${encodeURIComponent(sessionId)}`);
  }

  createSession(payload: CreateSessionRequest): Promise<SessionPayload> {
    return this.request("POST", "/session", payload);
  }

  contest(sessionId: string, edit: EditPayload): Promise<ContestReportPayload> {
    return this.request("POST", `/session/${encodeURIComponent(sessionId)}/contest`, { edit });
  }
}
