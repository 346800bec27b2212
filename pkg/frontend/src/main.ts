/** Page wiring: binds the Dashboard controller to the static markup. */

import { ApiClient } from "./api.js";
import { Dashboard } from "./app.js";
import { fmtStrength } from "./format.js";
import type { GraphPayload, Polarity } from "./types.js";

// Small self-contained graph for trying the dashboard without a corpus:
// two supporting chronicles and one attacking almanac around a claim.
const DEMO_GRAPH: GraphPayload = {
  arguments: [
    { id: "claim", text: "The harbor lighthouse was completed in 1889.", kind: "claim", base_score: 0.5 },
    { id: "E1", text: "A town chronicle lists the lighthouse as finished in 1889.", kind: "evidence", base_score: 0.5 },
    { id: "E2", text: "The harbor registry includes the lighthouse in its 1890 survey.", kind: "evidence", base_score: 0.5 },
    { id: "E3", text: "A later almanac dates the lighthouse to 1893.", kind: "evidence", base_score: 0.5 },
  ],
  attacks: [
    ["E3", "claim"],
    ["E3", "E1"],
  ],
  supports: [
    ["E1", "claim"],
    ["E2", "claim"],
    ["E2", "E1"],
  ],
};

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

function start(): void {
  const api = new ApiClient();
  const dashboard = new Dashboard(api);

  const sessionInput = byId<HTMLInputElement>("session-input");
  const panels = {
    banner: byId<HTMLDivElement>("banner"),
    error: byId<HTMLDivElement>("load-error"),
    header: byId<HTMLDivElement>("session-header"),
    verdict: byId<HTMLDivElement>("verdict"),
    graph: byId<HTMLDivElement>("graph"),
    trajectory: byId<HTMLDivElement>("trajectory"),
    inspector: byId<HTMLDivElement>("inspector"),
    history: byId<HTMLDivElement>("history"),
  };

  function refresh(): void {
    const view = dashboard.render();
    panels.banner.innerHTML = view.banner;
    panels.error.innerHTML = view.error;
    panels.header.innerHTML = view.header;
    panels.verdict.innerHTML = view.verdict;
    panels.graph.innerHTML = view.graph;
    panels.trajectory.innerHTML = view.trajectory;
    panels.inspector.innerHTML = view.inspector;
    panels.history.innerHTML = view.history;
    byId<HTMLButtonElement>("undo-btn").disabled = !dashboard.canUndo;
    if (dashboard.state.session !== null) {
      sessionInput.value = dashboard.state.session.session_id;
    }
  }

  byId<HTMLButtonElement>("load-btn").addEventListener("click", async () => {
    const id = sessionInput.value.trim();
    if (id === "") return;
    await dashboard.load(id);
    refresh();
  });

  byId<HTMLButtonElement>("demo-btn").addEventListener("click", async () => {
    await dashboard.createFromGraph(DEMO_GRAPH, DEMO_GRAPH.arguments[0].text);
    refresh();
  });

  byId<HTMLButtonElement>("undo-btn").addEventListener("click", async () => {
    await dashboard.undo();
    refresh();
  });

  panels.graph.addEventListener("click", (event) => {
    const target = (event.target as Element).closest("[data-node]");
    dashboard.select(target ? target.getAttribute("data-node") : null);
    refresh();
  });

  // Inspector controls are re-rendered on every refresh, so handle them
  // through delegation instead of per-element listeners.
  panels.inspector.addEventListener("input", (event) => {
    const target = event.target as HTMLInputElement;
    if (target.id === "beta-slider") {
      byId<HTMLSpanElement>("beta-value").textContent = fmtStrength(Number(target.value));
    }
  });

  panels.inspector.addEventListener("click", async (event) => {
    const button = (event.target as Element).closest("button[data-action]");
    if (!button) return;
    const action = button.getAttribute("data-action");
    if (action === "apply-base") {
      const argId = button.getAttribute("data-arg");
      const slider = byId<HTMLInputElement>("beta-slider");
      if (argId !== null) await dashboard.applyBaseScore(argId, Number(slider.value));
      refresh();
    } else if (action === "set-polarity") {
      const src = button.getAttribute("data-src");
      const dst = button.getAttribute("data-dst");
      const polarity = button.getAttribute("data-polarity") as Polarity | null;
      if (src !== null && dst !== null && polarity !== null) {
        await dashboard.applyPolarity(src, dst, polarity);
      }
      refresh();
    }
  });

  const fromQuery = new URLSearchParams(window.location.search).get("session");
  if (fromQuery !== null) {
    sessionInput.value = fromQuery;
    void dashboard.load(fromQuery).then(refresh);
  }
}

document.addEventListener("DOMContentLoaded", start);
