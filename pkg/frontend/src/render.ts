/**
 * Pure HTML/SVG string builders. Rendering never computes semantics:
 * every strength, label and threshold shown here is read from an API
 * payload and passed through the three-decimal formatter.
 */

import {
  describeEdit,
  escapeHtml,
  fmtStrength,
  fmtTau,
  strengthColor,
  verdictWord,
} from "./format.js";
import { edgePolarity, GRAPH_HEIGHT, GRAPH_WIDTH, type ViewState } from "./state.js";
import type { Polarity } from "./types.js";

const NODE_RADIUS = 26;
const TRAJ_WIDTH = 640;
const TRAJ_HEIGHT = 260;
const TRAJ_PAD = 30;

const LINE_COLORS = ["#1565c0", "#ef6c00", "#6a1b9a", "#00838f", "#ad1457", "#4e342e"];

/** Verdict flip banner, empty when the last contest did not flip. */
export function renderBanner(state: ViewState): string {
  const report = state.lastReport;
  if (!report || !report.flipped) return "";
  const before = verdictWord(report.before.label);
  const after = verdictWord(report.after.label);
  return `<div class="flip-banner" role="alert">Verdict flipped: ${before} &rarr; ${after}</div>`;
}

export function renderError(state: ViewState): string {
  if (state.error === null) return "";
  return `<div class="error">${escapeHtml(state.error)}</div>`;
}

export function renderVerdictPanel(state: ViewState): string {
  const session = state.session;
  if (session === null) return "<p class=\"muted\">No session loaded.</p>";
  const verdict = session.verdict;
  if (verdict === null) {
    return "<p class=\"muted\">This session's graph has no claim argument.</p>";
  }
  const convergence = verdict.converged ? "converged" : "did not converge";
  return [
    `<div class="verdict-label verdict-${verdict.label}">${verdictWord(verdict.label)}</div>`,
    `<div class="verdict-detail">claim strength <strong data-strength="${fmtStrength(verdict.claim_strength)}">${fmtStrength(verdict.claim_strength)}</strong>`,
    ` at threshold ${fmtTau(session.tau)} (${convergence}, decided by ${escapeHtml(verdict.decided_by)})</div>`,
  ].join("");
}

function edgeLine(state: ViewState, src: string, dst: string, polarity: "attack" | "support"): string {
  const a = state.positions.get(src);
  const b = state.positions.get(dst);
  if (!a || !b) return "";
  // Trim the line at the node circles so the arrowhead stays visible.
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const d = Math.max(Math.hypot(dx, dy), 1);
  const x1 = a.x + (dx / d) * NODE_RADIUS;
  const y1 = a.y + (dy / d) * NODE_RADIUS;
  const x2 = b.x - (dx / d) * (NODE_RADIUS + 6);
  const y2 = b.y - (dy / d) * (NODE_RADIUS + 6);
  return (
    `<line class="edge ${polarity}" data-edge="${escapeHtml(src)}->${escapeHtml(dst)}"` +
    ` x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" y2="${y2.toFixed(1)}"` +
    ` marker-end="url(#arrow-${polarity})"/>`
  );
}

/**
 * Argument graph as SVG: one node per argument colored by its strength,
 * green support edges, red attack edges, tooltips with the API numbers.
 */
export function renderGraph(state: ViewState): string {
  const session = state.session;
  if (session === null) return "";
  const parts: string[] = [];
  parts.push(
    `<svg class="graph" viewBox="0 0 ${GRAPH_WIDTH} ${GRAPH_HEIGHT}" xmlns="http://www.w3.org/2000/svg">`,
    "<defs>",
    '<marker id="arrow-attack" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#c62828"/></marker>',
    '<marker id="arrow-support" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#2e7d32"/></marker>',
    "</defs>",
  );
  for (const [src, dst] of session.qbaf.attacks) parts.push(edgeLine(state, src, dst, "attack"));
  for (const [src, dst] of session.qbaf.supports) parts.push(edgeLine(state, src, dst, "support"));

  for (const argument of session.qbaf.arguments) {
    const p = state.positions.get(argument.id);
    if (!p) continue;
    const strength = session.strengths[argument.id];
    const shown = fmtStrength(strength);
    const classes = ["node"];
    if (argument.kind === "claim") classes.push("claim");
    if (state.selected === argument.id) classes.push("selected");
    if (state.changed.has(argument.id)) classes.push("changed");
    const tooltip = `${argument.id}: strength ${shown}, base ${fmtStrength(argument.base_score)}${argument.text ? ". " + argument.text : ""}`;
    parts.push(
      `<g class="${classes.join(" ")}" data-node="${escapeHtml(argument.id)}" data-strength="${shown}">`,
      `<title>${escapeHtml(tooltip)}</title>`,
      `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="${NODE_RADIUS}" fill="${strengthColor(strength)}"/>`,
      `<text class="node-id" x="${p.x.toFixed(1)}" y="${(p.y - 4).toFixed(1)}">${escapeHtml(argument.id)}</text>`,
      `<text class="node-strength" x="${p.x.toFixed(1)}" y="${(p.y + 12).toFixed(1)}">${shown}</text>`,
      "</g>",
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Strength trajectories as one polyline per argument, sample per solver row. */
export function renderTrajectory(state: ViewState): string {
  const session = state.session;
  if (session === null || session.trajectory.length === 0) return "";
  const rows = session.trajectory;
  const innerW = TRAJ_WIDTH - 2 * TRAJ_PAD;
  const innerH = TRAJ_HEIGHT - 2 * TRAJ_PAD;
  const x = (i: number) => TRAJ_PAD + (rows.length > 1 ? (i / (rows.length - 1)) * innerW : 0);
  const y = (s: number) => TRAJ_PAD + (1 - s) * innerH;

  const parts: string[] = [];
  parts.push(
    `<svg class="trajectory" viewBox="0 0 ${TRAJ_WIDTH} ${TRAJ_HEIGHT}" xmlns="http://www.w3.org/2000/svg">`,
    `<line class="axis" x1="${TRAJ_PAD}" y1="${y(0)}" x2="${TRAJ_WIDTH - TRAJ_PAD}" y2="${y(0)}"/>`,
    `<line class="axis" x1="${TRAJ_PAD}" y1="${y(0)}" x2="${TRAJ_PAD}" y2="${y(1)}"/>`,
    `<line class="tau" x1="${TRAJ_PAD}" y1="${y(session.tau).toFixed(1)}" x2="${TRAJ_WIDTH - TRAJ_PAD}" y2="${y(session.tau).toFixed(1)}"/>`,
    `<text class="tau-label" x="${TRAJ_WIDTH - TRAJ_PAD + 4}" y="${(y(session.tau) + 4).toFixed(1)}">${fmtTau(session.tau)}</text>`,
  );
  session.ids.forEach((id, col) => {
    const points = rows.map((row, i) => `${x(i).toFixed(1)},${y(row[col]).toFixed(1)}`).join(" ");
    const color = LINE_COLORS[col % LINE_COLORS.length];
    parts.push(`<polyline class="series" data-arg="${escapeHtml(id)}" points="${points}" fill="none" stroke="${color}"/>`);
    const last = rows[rows.length - 1][col];
    parts.push(
      `<text class="series-label" x="${(TRAJ_WIDTH - TRAJ_PAD + 4)}" y="${(y(last) + 4).toFixed(1)}" fill="${color}">${escapeHtml(id)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}

function polarityButtons(src: string, dst: string, current: Polarity): string {
  const options: Polarity[] = ["attack", "support", "neutral"];
  const buttons = options
    .map((polarity) => {
      const active = polarity === current ? " active" : "";
      return (
        `<button class="polarity${active}" data-action="set-polarity" data-src="${escapeHtml(src)}"` +
        ` data-dst="${escapeHtml(dst)}" data-polarity="${polarity}">${polarity}</button>`
      );
    })
    .join("");
  return `<span class="polarity-group">${buttons}</span>`;
}

/** Inspector for the selected argument: base-score slider and polarity toggles. */
export function renderInspector(state: ViewState): string {
  const session = state.session;
  if (session === null) return "";
  if (state.selected === null) {
    return "<p class=\"muted\">Select an argument to contest it.</p>";
  }
  const argument = session.qbaf.arguments.find((a) => a.id === state.selected);
  if (!argument) return "";
  const parts: string[] = [];
  parts.push(`<h3>${escapeHtml(argument.id)}</h3>`);
  if (argument.text) parts.push(`<p class="arg-text">${escapeHtml(argument.text)}</p>`);
  parts.push(
    `<p>strength <strong data-strength="${fmtStrength(session.strengths[argument.id])}">${fmtStrength(session.strengths[argument.id])}</strong></p>`,
    '<div class="control">',
    `<label for="beta-slider">base score</label> `,
    `<input id="beta-slider" type="range" min="0" max="1" step="0.01" value="${argument.base_score}"/>`,
    `<span id="beta-value">${fmtStrength(argument.base_score)}</span>`,
    `<button data-action="apply-base" data-arg="${escapeHtml(argument.id)}">apply</button>`,
    "</div>",
  );
  const others = session.ids.filter((id) => id !== argument.id);
  if (others.length > 0) {
    parts.push('<div class="control"><h4>outgoing relations</h4><ul class="edges">');
    for (const dst of others) {
      const current = edgePolarity(session, argument.id, dst);
      parts.push(`<li>to ${escapeHtml(dst)}: ${polarityButtons(argument.id, dst, current)}</li>`);
    }
    parts.push("</ul></div>");
  }
  if (state.editError !== null) {
    parts.push(`<div class="edit-error">${escapeHtml(state.editError)}</div>`);
  }
  return parts.join("");
}

/** Audit trail of edits applied to the session, oldest first. */
export function renderHistory(state: ViewState): string {
  const session = state.session;
  if (session === null) return "";
  if (session.edits.length === 0) return "<p class=\"muted\">No edits yet.</p>";
  const items = session.edits.map((edit) => `<li>${escapeHtml(describeEdit(edit))}</li>`).join("");
  return `<ol class="history">${items}</ol>`;
}

/** Session metadata line above the graph. */
export function renderHeader(state: ViewState): string {
  const session = state.session;
  if (session === null) return "";
  const claim = session.claim ? escapeHtml(session.claim) : "(no claim text)";
  return (
    `<span class="session-id">${escapeHtml(session.session_id)}</span> ` +
    `<span class="claim-text">${claim}</span> ` +
    `<span class="muted">${session.ids.length} arguments, ${session.steps} solver samples</span>`
  );
}

export interface RenderedView {
  banner: string;
  error: string;
  header: string;
  verdict: string;
  graph: string;
  trajectory: string;
  inspector: string;
  history: string;
}

export function renderAll(state: ViewState): RenderedView {
  return {
    banner: renderBanner(state),
    error: renderError(state),
    header: renderHeader(state),
    verdict: renderVerdictPanel(state),
    graph: renderGraph(state),
    trajectory: renderTrajectory(state),
    inspector: renderInspector(state),
    history: renderHistory(state),
  };
}
