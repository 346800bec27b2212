/** Display formatting. Strengths are always shown with three decimals. */

import type { EditPayload, VerdictLabel } from "./types.js";

export function fmtStrength(value: number): string {
  return value.toFixed(3);
}

export function fmtTau(value: number): string {
  return value.toFixed(2);
}

export function verdictWord(label: VerdictLabel | null): string {
  if (label === null) return "no claim";
  return label.toUpperCase();
}

/** Color for a node given its strength, red at 0 through green at 1. */
export function strengthColor(value: number): string {
  const hue = Math.round(120 * Math.min(1, Math.max(0, value)));
  return `hsl(${hue}, 55%, 52%)`;
}

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** One history line per applied edit. */
export function describeEdit(edit: EditPayload): string {
  if (edit.kind === "set_base_score") {
    return `base score of ${edit.arg_id} set to ${fmtStrength(edit.base_score)}`;
  }
  if (edit.polarity === "neutral") {
    return `edge ${edit.src} to ${edit.dst} neutralized`;
  }
  return `edge ${edit.src} to ${edit.dst} set to ${edit.polarity}`;
}
