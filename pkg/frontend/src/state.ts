/**
 * View state and its transitions. The state holds API payloads verbatim;
 * derived display data (layout, highlights) is recomputed from them so a
 * reload of the same session reproduces the identical view.
 */

import { layoutGraph, type Point } from "./layout.js";
import { fmtStrength } from "./format.js";
import type { ContestReportPayload, EditPayload, SessionPayload } from "./types.js";

export const GRAPH_WIDTH = 640;
export const GRAPH_HEIGHT = 420;

export interface ViewState {
  session: SessionPayload | null;
  positions: Map<string, Point>;
  selected: string | null;
  /** Edit staged in the inspector but not yet posted. */
  pendingEdit: EditPayload | null;
  lastReport: ContestReportPayload | null;
  /** Arguments whose three-decimal strength changed in the last contest. */
  changed: Set<string>;
  /** Whole-view failure, e.g. an unknown session. */
  error: string | null;
  /** Inline validation message from a rejected edit. */
  editError: string | null;
}

export function initialState(): ViewState {
  return {
    session: null,
    positions: new Map(),
    selected: null,
    pendingEdit: null,
    lastReport: null,
    changed: new Set(),
    error: null,
    editError: null,
  };
}

/** Ids whose displayed (three-decimal) strength differs between two solves. */
export function changedIds(
  before: Record<string, number>,
  after: Record<string, number>,
): Set<string> {
  const out = new Set<string>();
  for (const id of Object.keys(after)) {
    if (!(id in before) || fmtStrength(before[id]) !== fmtStrength(after[id])) out.add(id);
  }
  return out;
}

export function loadSession(state: ViewState, session: SessionPayload): ViewState {
  return {
    ...state,
    session,
    positions: layoutGraph(session.qbaf, GRAPH_WIDTH, GRAPH_HEIGHT),
    selected: state.selected !== null && session.ids.includes(state.selected) ? state.selected : null,
    pendingEdit: null,
    lastReport: null,
    changed: new Set(),
    error: null,
    editError: null,
  };
}

/** Fold a successful contest and the refreshed session into the view. */
export function applyContest(
  state: ViewState,
  report: ContestReportPayload,
  refreshed: SessionPayload,
): ViewState {
  return {
    ...loadSession(state, refreshed),
    lastReport: report,
    changed: changedIds(report.before.strengths, report.after.strengths),
  };
}

/** A rejected edit leaves the rendered session untouched. */
export function failEdit(state: ViewState, message: string): ViewState {
  return { ...state, editError: message };
}

export function failLoad(message: string): ViewState {
  return { ...initialState(), error: message };
}

export function selectArgument(state: ViewState, argId: string | null): ViewState {
  if (argId !== null && (state.session === null || !state.session.ids.includes(argId))) {
    return state;
  }
  return { ...state, selected: argId, pendingEdit: null, editError: null };
}

export function stagePendingEdit(state: ViewState, edit: EditPayload | null): ViewState {
  return { ...state, pendingEdit: edit };
}

/** Current polarity of (src, dst) in the rendered graph. */
export function edgePolarity(session: SessionPayload, src: string, dst: string): "attack" | "support" | "neutral" {
  if (session.qbaf.attacks.some(([s, d]) => s === src && d === dst)) return "attack";
  if (session.qbaf.supports.some(([s, d]) => s === src && d === dst)) return "support";
  return "neutral";
}
