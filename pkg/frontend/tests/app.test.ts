/**
 * End-to-end dashboard flows against recorded backend responses. The
 * fixtures are byte-for-byte captures from the real API (see
 * fixtures/capture.py), so these tests pin the UI to engine numbers.
 */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Dashboard } from "../src/app.js";
import { fmtStrength } from "../src/format.js";
import { renderGraph } from "../src/render.js";
import { initialState, loadSession } from "../src/state.js";

import contestE1 from "./fixtures/contest_e1.json";
import contestE3 from "./fixtures/contest_e3.json";
import contestIdentity from "./fixtures/contest_identity.json";
import contestNeutral from "./fixtures/contest_neutral.json";
import errorBadEdit from "./fixtures/error_bad_edit.json";
import errorUnknown from "./fixtures/error_unknown_session.json";
import afterE1 from "./fixtures/session_after_e1.json";
import afterE3 from "./fixtures/session_after_e3.json";
import afterIdentity from "./fixtures/session_after_identity.json";
import afterNeutral from "./fixtures/session_after_neutral.json";
import contested from "./fixtures/session_contested.json";
import createFixture from "./fixtures/session_create.json";
import { asSession, scriptedFetch, type ScriptedResponse } from "./helpers.js";

function dashboardWith(script: ScriptedResponse[]): { dash: Dashboard; stub: ReturnType<typeof scriptedFetch> } {
  const stub = scriptedFetch(script);
  return { dash: new Dashboard(new ApiClient(stub.fetch)), stub };
}

function dataStrength(svg: string, id: string): string {
  const match = svg.match(new RegExp(`data-node="${id}" data-strength="([^"]+)"`));
  expect(match, `node ${id} missing from graph`).not.toBeNull();
  return match![1];
}

describe("recorded contestation replay", () => {
  it("lowering the supporter and raising the attacker flips the verdict", async () => {
    const { dash, stub } = dashboardWith([
      { method: "GET", path: "/session/s1", body: createFixture },
      { method: "POST", path: "/session/s1/contest", body: contestE1 },
      { method: "GET", path: "/session/s1", body: afterE1 },
      { method: "POST", path: "/session/s1/contest", body: contestE3 },
      { method: "GET", path: "/session/s1", body: afterE3 },
    ]);

    await dash.load("s1");
    let view = dash.render();
    expect(view.verdict).toContain("TRUE");
    expect(view.banner).toBe("");

    // First intervention: drop the supporting chronicle to 0.1.
    await dash.applyBaseScore("E1", 0.1);
    view = dash.render();
    expect(view.banner).toBe("");
    expect(dataStrength(view.graph, "E1")).toBe("0.100");
    expect(view.verdict).toContain("TRUE");

    // Second intervention: raise the attacking almanac to 0.9.
    await dash.applyBaseScore("E3", 0.9);
    view = dash.render();
    stub.assertDrained();

    // The flip banner announces the verdict change.
    expect(view.banner).toContain("Verdict flipped");
    expect(view.banner).toContain("TRUE");
    expect(view.banner).toContain("FALSE");
    expect(view.verdict).toContain("FALSE");

    // The displayed claim strength is the engine value within 0.001.
    const apiStrength = asSession(afterE3).strengths.claim;
    const shown = dataStrength(view.graph, "claim");
    expect(shown).toBe("0.456");
    expect(Math.abs(Number(shown) - apiStrength)).toBeLessThanOrEqual(0.001);

    // Every rendered strength equals its API value at three decimals.
    for (const id of asSession(afterE3).ids) {
      expect(dataStrength(view.graph, id)).toBe(fmtStrength(asSession(afterE3).strengths[id]));
    }

    // Both edits are on the audit trail, oldest first.
    expect(view.history).toContain("base score of E1 set to 0.100");
    expect(view.history).toContain("base score of E3 set to 0.900");
  });

  it("reloading the session from the API alone reproduces the display", async () => {
    const { dash } = dashboardWith([
      { method: "GET", path: "/session/s1", body: createFixture },
      { method: "POST", path: "/session/s1/contest", body: contestE1 },
      { method: "GET", path: "/session/s1", body: afterE1 },
      { method: "POST", path: "/session/s1/contest", body: contestE3 },
      { method: "GET", path: "/session/s1", body: afterE3 },
    ]);
    await dash.load("s1");
    await dash.applyBaseScore("E1", 0.1);
    await dash.applyBaseScore("E3", 0.9);
    const after = dash.render();

    // A fresh tab loading the same session sees the identical panels;
    // only the interaction-scoped highlight and banner differ.
    const fresh = loadSession(initialState(), asSession(afterE3));
    const { dash: freshDash } = dashboardWith([{ method: "GET", path: "/session/s1", body: afterE3 }]);
    await freshDash.load("s1");
    const reloaded = freshDash.render();

    expect(reloaded.trajectory).toBe(after.trajectory);
    expect(reloaded.verdict).toBe(after.verdict);
    expect(reloaded.history).toBe(after.history);
    expect(reloaded.header).toBe(after.header);
    expect(reloaded.graph).toBe(renderGraph({ ...dash.state, changed: new Set() }));
    expect(reloaded.graph).toBe(renderGraph(fresh));
  });

  it("an identity edit changes nothing visible and raises no banner", async () => {
    const { dash, stub } = dashboardWith([
      { method: "GET", path: "/session/s2", body: { ...(createFixture as object), session_id: "s2" } },
      { method: "POST", path: "/session/s2/contest", body: contestIdentity },
      { method: "GET", path: "/session/s2", body: afterIdentity },
    ]);
    await dash.load("s2");
    dash.select("claim");
    const before = dash.render();

    await dash.applyBaseScore("claim", 0.5);
    const after = dash.render();
    stub.assertDrained();

    expect(after.banner).toBe("");
    expect(dash.state.changed.size).toBe(0);
    expect(after.graph).toBe(before.graph);
    expect(after.verdict).toBe(before.verdict);
    // Only the audit trail records that anything happened.
    expect(after.history).toContain("base score of claim set to 0.500");
  });
});

describe("polarity contestation", () => {
  it("neutralizing the attack removes the edge and flips the verdict back", async () => {
    const { dash, stub } = dashboardWith([
      { method: "GET", path: "/session/s3", body: contested },
      { method: "POST", path: "/session/s3/contest", body: contestNeutral },
      { method: "GET", path: "/session/s3", body: afterNeutral },
    ]);
    await dash.load("s3");
    let view = dash.render();
    expect(view.graph).toContain('data-edge="E3->claim"');
    expect(view.verdict).toContain("FALSE");

    await dash.applyPolarity("E3", "claim", "neutral");
    view = dash.render();
    stub.assertDrained();

    expect(view.graph).not.toContain('data-edge="E3->claim"');
    expect(view.banner).toContain("Verdict flipped");
    expect(view.verdict).toContain("TRUE");
    expect(dataStrength(view.graph, "claim")).toBe("0.627");
    expect(view.history).toContain("edge E3 to claim neutralized");
  });
});

describe("failure handling", () => {
  it("surfaces an unknown session as a page-level message", async () => {
    const { dash } = dashboardWith([
      { method: "GET", path: "/session/s999", body: errorUnknown.body, status: errorUnknown.status },
    ]);
    await dash.load("s999");
    const view = dash.render();
    expect(dash.state.session).toBeNull();
    expect(view.error).toContain("unknown session &#39;s999&#39;");
    expect(view.graph).toBe("");
  });

  it("renders a rejected edit inline and keeps the view unchanged", async () => {
    const { dash } = dashboardWith([
      { method: "GET", path: "/session/s1", body: createFixture },
      { method: "POST", path: "/session/s1/contest", body: errorBadEdit.body, status: errorBadEdit.status },
    ]);
    await dash.load("s1");
    dash.select("E1");
    const before = dash.render();

    await dash.applyBaseScore("E1", 1.5);
    const after = dash.render();

    expect(after.inspector).toContain("outside [0, 1]");
    expect(after.graph).toBe(before.graph);
    expect(after.verdict).toBe(before.verdict);
    expect(after.banner).toBe("");
    expect(dash.state.session?.strengths).toEqual(asSession(createFixture).strengths);
    expect(dash.state.session?.edits).toEqual([]);
  });
});

describe("undo", () => {
  it("replays all but the last edit into a fresh session", async () => {
    const { dash, stub } = dashboardWith([
      { method: "GET", path: "/session/s1", body: createFixture },
      { method: "POST", path: "/session/s1/contest", body: contestE1 },
      { method: "GET", path: "/session/s1", body: afterE1 },
      { method: "POST", path: "/session/s1/contest", body: contestE3 },
      { method: "GET", path: "/session/s1", body: afterE3 },
      // Undo: new session from the original graph, replay the first edit.
      { method: "POST", path: "/session", body: { ...(createFixture as object), session_id: "s4" } },
      { method: "POST", path: "/session/s4/contest", body: contestE1 },
      { method: "GET", path: "/session/s4", body: { ...(afterE1 as object), session_id: "s4" } },
    ]);
    await dash.load("s1");
    expect(dash.canUndo).toBe(false);
    await dash.applyBaseScore("E1", 0.1);
    await dash.applyBaseScore("E3", 0.9);
    expect(dash.canUndo).toBe(true);

    await dash.undo();
    stub.assertDrained();

    const replayed = stub.calls[5];
    expect(replayed.method).toBe("POST");
    expect((replayed.body as { qbaf: unknown }).qbaf).toEqual(asSession(createFixture).qbaf);
    const view = dash.render();
    expect(view.verdict).toContain("TRUE");
    expect(dataStrength(view.graph, "claim")).toBe("0.504");
    expect(view.history).toContain("base score of E1 set to 0.100");
    expect(view.history).not.toContain("E3");
  });
});
