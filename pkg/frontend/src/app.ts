/**
 * Dashboard controller: owns the view state and talks to the API. It has
 * no DOM dependency so the whole interaction flow is testable against a
 * stubbed fetch; main.ts binds it to the page.
 */

import { ApiClient, ApiError } from "./api.js";
import { renderAll, type RenderedView } from "./render.js";
import {
  applyContest,
  failEdit,
  failLoad,
  initialState,
  loadSession,
  selectArgument,
  type ViewState,
} from "./state.js";
import type { EditPayload, GraphPayload, Polarity } from "./types.js";

export class Dashboard {
  state: ViewState = initialState();
  /** Graph the session started from; set when this tab created or loaded
   *  an edit-free session, used to replay history for undo. */
  private originalGraph: GraphPayload | null = null;

  constructor(private readonly api: ApiClient) {}

  render(): RenderedView {
    return renderAll(this.state);
  }

  async load(sessionId: string): Promise<void> {
    try {
      const session = await this.api.getSession(sessionId);
      this.state = loadSession(this.state, session);
      if (session.edits.length === 0) this.originalGraph = session.qbaf;
    } catch (error) {
      this.state = failLoad(messageOf(error));
      this.originalGraph = null;
    }
  }

  async createFromGraph(graph: GraphPayload, claim?: string): Promise<void> {
    try {
      const session = await this.api.createSession({ qbaf: graph, claim: claim ?? null });
      this.state = loadSession(this.state, session);
      this.originalGraph = graph;
    } catch (error) {
      this.state = failLoad(messageOf(error));
    }
  }

  select(argId: string | null): void {
    this.state = selectArgument(this.state, argId);
  }

  async applyBaseScore(argId: string, baseScore: number): Promise<void> {
    await this.applyEdit({ kind: "set_base_score", arg_id: argId, base_score: baseScore });
  }

  async applyPolarity(src: string, dst: string, polarity: Polarity): Promise<void> {
    await this.applyEdit({ kind: "set_polarity", src, dst, polarity });
  }

  /** Post one edit; on success re-fetch the session so the rendering
   *  mirrors the engine, on rejection surface the message inline. */
  private async applyEdit(edit: EditPayload): Promise<void> {
    const session = this.state.session;
    if (session === null) return;
    try {
      const report = await this.api.contest(session.session_id, edit);
      const refreshed = await this.api.getSession(session.session_id);
      this.state = applyContest(this.state, report, refreshed);
    } catch (error) {
      this.state = failEdit(this.state, messageOf(error));
    }
  }

  get canUndo(): boolean {
    return (
      this.originalGraph !== null &&
      this.state.session !== null &&
      this.state.session.edits.length > 0
    );
  }

  /**
   * Undo the most recent edit by replaying the rest of the history from
   * the session's starting graph into a fresh session. The engine holds
   * no mutable undo state; the audit trail stays append-only.
   */
  async undo(): Promise<void> {
    const session = this.state.session;
    if (!this.canUndo || session === null || this.originalGraph === null) return;
    const replay = session.edits.slice(0, -1);
    try {
      const created = await this.api.createSession({
        qbaf: this.originalGraph,
        claim: session.claim,
        tau: session.tau,
      });
      for (const edit of replay) {
        await this.api.contest(created.session_id, edit);
      }
      const refreshed = replay.length > 0 ? await this.api.getSession(created.session_id) : created;
      const selected = this.state.selected;
      this.state = loadSession(this.state, refreshed);
      this.state = selectArgument(this.state, selected);
    } catch (error) {
      this.state = failEdit(this.state, messageOf(error));
    }
  }
}

function messageOf(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  if (error instanceof Error) return error.message;
  return String(error);
}
